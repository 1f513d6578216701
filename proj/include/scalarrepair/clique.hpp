/*
 * Copyright 2026 The scalarrepair Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Clique repair for (n, n-2) codes vectorized over the half-degree subfield
// GF(p^(m/2)) with beta = 1.
//
// Systematic nodes i, j are adjacent iff P_i^{(k+2)} / P_j^{(k+2)} lies in the
// subfield. Adjacency is transitive, so the graph splits into cliques, which
// are the cosets of GF(p^(m/2))* met by the second parity column. Repairing
// node i with elements [1, mu] costs 2 subfield symbols per node except the
// nodes u with mu P_u^{(k+2)} in the subfield, which cost 1; those form at most
// one clique, not the one containing i. The best choice saves C_i symbols,
// C_i being the size of the largest clique that does not contain i.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "scalarrepair/codes.hpp"
#include "scalarrepair/errors.hpp"
#include "scalarrepair/gf.hpp"
#include "scalarrepair/repair.hpp"

namespace scalarrepair {

struct CliquePartition {
  Subpacketization sub;                        // s = m/2, beta = 1
  std::vector<std::vector<std::size_t>> cliques; // 1-based node ids, ordered by smallest member

  std::size_t clique_of(std::size_t node) const {
    for (std::size_t c = 0; c < cliques.size(); ++c)
      if (std::find(cliques[c].begin(), cliques[c].end(), node) != cliques[c].end()) return c;
    throw Error(Errc::InvalidScheme, "node " + std::to_string(node) + " is not systematic");
  }
};

inline CliquePartition generate_clique(const CodeSpec& code) {
  if (code.parities() != 2) throw Error(Errc::NotTwoParity, "clique repair needs n-k = 2, code has " + std::to_string(code.parities()));
  const Field& f = code.field();
  if (f.degree() % 2 != 0) throw Error(Errc::OddExtensionDegree, "extension degree " + std::to_string(f.degree()) + " is odd");
  if (!is_normalized(code)) throw Error(Errc::NotNormalized, "first parity column must be all ones");

  CliquePartition part{make_sub(code, f.degree() / 2), {}};
  const std::size_t second = code.k() + 2;
  for (std::size_t i = 1; i <= code.k(); ++i) {
    const Element pi = code.coeff(i, second);
    if (pi.is_zero()) throw Error(Errc::InvalidCode, "zero coefficient in second parity column");
    bool placed = false;
    for (auto& clique : part.cliques) {
      if (f.is_in_subfield(f.div(pi, code.coeff(clique.front(), second)), part.sub.subfield)) {
        clique.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) part.cliques.push_back({i});
  }
  return part;
}

/// Size of the largest clique not containing node i (0 when there is none).
inline std::size_t largest_other_clique(const CliquePartition& part, std::size_t i) {
  const std::size_t own = part.clique_of(i);
  std::size_t best = 0;
  for (std::size_t c = 0; c < part.cliques.size(); ++c)
    if (c != own) best = std::max(best, part.cliques[c].size());
  return best;
}

/// Minimum linear repair bandwidth of node i in subfield symbols: M - (C_i / 2)(M / k).
inline unsigned clique_bound(const CliquePartition& part, std::size_t i) {
  const std::size_t k = part.sub.code.k();
  const std::size_t file = part.sub.file_size;
  const std::size_t ci = largest_other_clique(part, i);
  return static_cast<unsigned>(file - ci * file / (2 * k));
}

struct CliqueRepair {
  RepairScheme scheme;
  bool degenerate = false;  // no clique outside i's own: naive bandwidth
  std::size_t aligned_node = 0; // node l whose coefficient mu inverts (0 when degenerate)
  Element mu;
};

inline CliqueRepair find_repair(const CliquePartition& part, std::size_t i) {
  const auto& code = part.sub.code;
  const Field& f = code.field();
  const std::size_t own = part.clique_of(i);
  std::size_t pick = part.cliques.size();
  for (std::size_t c = 0; c < part.cliques.size(); ++c) {
    if (c == own) continue;
    if (pick == part.cliques.size() || part.cliques[c].size() > part.cliques[pick].size()) pick = c;
  }
  if (pick == part.cliques.size()) {
    RepairScheme naive = naive_scheme(part.sub, i);
    const Element mu = naive.elements()[1][0];
    return {std::move(naive), true, 0, mu};
  }
  const std::size_t l = part.cliques[pick].front();
  const Element mu = f.inv(code.coeff(l, code.k() + 2));
  RepairScheme scheme(part.sub, i, {{f.one()}, {mu}});
  const RepairReport rep = gamma_ranks(scheme);
  if (!rep.feasible || rep.total_bw != clique_bound(part, i))
    throw Error(Errc::InfeasibleScheme, "clique scheme for node " + std::to_string(i) + " misses its bound");
  return {std::move(scheme), false, l, mu};
}

}  // namespace scalarrepair
