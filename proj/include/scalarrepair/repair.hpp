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

// Single-node repair of a vectorized scalar code through repair field elements.
//
// A scheme for failed systematic node i downloads beta subfield symbols from
// every parity node l; equation j from node l is described by a nonzero
// element M_j^l of GF(p^m). The download needed from systematic node u is
//
//   gamma_u = rank over GF(p^s) of { M_j^l * P_u^{(l)} : all l, j },
//
// and the scheme repairs node i iff gamma_i = alpha = m / s.

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scalarrepair/codes.hpp"
#include "scalarrepair/errors.hpp"
#include "scalarrepair/gf.hpp"
#include "scalarrepair/linalg.hpp"

namespace scalarrepair {

/// The code viewed as a vector code over GF(p^s).
struct Subpacketization {
  CodeSpec code;
  Subfield subfield;
  unsigned s = 1;          // subfield degree over GF(p)
  unsigned beta = 1;       // equations per parity node
  unsigned alpha = 1;      // subfield symbols per node, m / s
  unsigned file_size = 1;  // k * alpha

  std::size_t element_count() const { return code.parities() * beta; }
  /// Bits carried by one subfield symbol.
  double symbol_bits() const { return s * std::log2(static_cast<double>(code.field().characteristic())); }

  friend bool operator==(const Subpacketization&, const Subpacketization&) = default;
};

inline Subpacketization make_sub(const CodeSpec& code, unsigned s) {
  const unsigned m = code.field().degree();
  if (s == 0 || m % s != 0)
    throw Error(Errc::IncompatibleSubfield, "subfield degree " + std::to_string(s) + " does not divide m=" + std::to_string(m));
  const unsigned alpha = m / s;
  if (alpha % code.parities() != 0)
    throw Error(Errc::IncompatibleSubfield, "n-k=" + std::to_string(code.parities()) + " does not divide m/s=" + std::to_string(alpha));
  Subpacketization sub{code, code.field().subfield(s), s, static_cast<unsigned>(alpha / code.parities()), alpha,
                       static_cast<unsigned>(code.k() * alpha)};
  return sub;
}

class RepairScheme {
 public:
  /// elements[l][j] is the element of equation j+1 from parity node k+1+l.
  RepairScheme(Subpacketization sub, std::size_t failed, std::vector<std::vector<Element>> elements)
      : sub_(std::move(sub)), failed_(failed), elements_(std::move(elements)) {
    const auto& code = sub_.code;
    if (failed_ < 1 || failed_ > code.k())
      throw Error(Errc::InvalidScheme, "failed node " + std::to_string(failed_) + " is not a systematic node of " + code.name());
    if (elements_.size() != code.parities())
      throw Error(Errc::DimensionMismatch, "scheme has " + std::to_string(elements_.size()) + " parity rows, code has " +
                                               std::to_string(code.parities()));
    for (std::size_t l = 0; l < elements_.size(); ++l) {
      if (elements_[l].size() != sub_.beta)
        throw Error(Errc::DimensionMismatch, "parity row " + std::to_string(l) + " has " + std::to_string(elements_[l].size()) +
                                                 " elements, beta is " + std::to_string(sub_.beta));
      for (Element e : elements_[l]) {
        code.field().check(e);
        if (e.is_zero()) throw Error(Errc::InvalidScheme, "repair field elements must be nonzero");
      }
    }
  }

  const Subpacketization& sub() const { return sub_; }
  const CodeSpec& code() const { return sub_.code; }
  std::size_t failed() const { return failed_; }
  const std::vector<std::vector<Element>>& elements() const { return elements_; }

  std::vector<Element> flat() const {
    std::vector<Element> out;
    for (const auto& row : elements_) out.insert(out.end(), row.begin(), row.end());
    return out;
  }

  friend bool operator==(const RepairScheme&, const RepairScheme&) = default;

 private:
  Subpacketization sub_;
  std::size_t failed_;
  std::vector<std::vector<Element>> elements_;
};

/// Bandwidth accounting in subfield symbols. total_bw counts gamma_i = alpha for
/// the parity downloads plus every interference rank.
struct RepairReport {
  std::size_t failed = 0;
  unsigned s = 1;
  unsigned alpha = 0;
  unsigned beta = 0;
  std::vector<unsigned> gammas;  // gammas[u-1]
  bool feasible = false;
  unsigned total_bw = 0;
  unsigned interference_bw = 0;  // sum over u != failed
  unsigned naive_bw = 0;
  unsigned cutset_bw = 0;
  double symbol_bits = 1.0;

  double total_bits() const { return total_bw * symbol_bits; }
  friend bool operator==(const RepairReport&, const RepairReport&) = default;
};

struct Baselines {
  unsigned naive = 0;   // M
  unsigned cutset = 0;  // (n-1) beta
};

inline Baselines baselines(const Subpacketization& sub) {
  return {sub.file_size, static_cast<unsigned>((sub.code.n() - 1) * sub.beta)};
}

namespace detail {

// Interference rank of systematic node u for a flat element list (parity-major).
inline unsigned gamma_for(const Subpacketization& sub, std::size_t u, std::span<const Element> flat,
                          std::vector<Element>& scratch) {
  const auto& code = sub.code;
  const Field& f = code.field();
  scratch.clear();
  for (std::size_t l = 0; l < code.parities(); ++l) {
    const Element p = code.coeff(u, code.k() + 1 + l);
    for (unsigned j = 0; j < sub.beta; ++j) scratch.push_back(f.mul(flat[l * sub.beta + j], p));
  }
  return static_cast<unsigned>(f.rank_over_subfield(scratch, sub.subfield));
}

inline RepairReport evaluate(const Subpacketization& sub, std::size_t failed, std::span<const Element> flat) {
  RepairReport rep;
  rep.failed = failed;
  rep.s = sub.s;
  rep.alpha = sub.alpha;
  rep.beta = sub.beta;
  const Baselines b = baselines(sub);
  rep.naive_bw = b.naive;
  rep.cutset_bw = b.cutset;
  rep.symbol_bits = sub.symbol_bits();
  std::vector<Element> scratch;
  for (std::size_t u = 1; u <= sub.code.k(); ++u) rep.gammas.push_back(gamma_for(sub, u, flat, scratch));
  rep.feasible = rep.gammas[failed - 1] == sub.alpha;
  rep.total_bw = std::accumulate(rep.gammas.begin(), rep.gammas.end(), 0u);
  rep.interference_bw = rep.total_bw - rep.gammas[failed - 1];
  return rep;
}

// Total bandwidth, or 0 when the tuple cannot repair the failed node. Checks the
// failed node first so infeasible tuples cost one rank computation.
inline unsigned feasible_total(const Subpacketization& sub, std::size_t failed, std::span<const Element> flat,
                               std::vector<Element>& scratch) {
  if (gamma_for(sub, failed, flat, scratch) != sub.alpha) return 0;
  unsigned total = sub.alpha;
  for (std::size_t u = 1; u <= sub.code.k(); ++u)
    if (u != failed) total += gamma_for(sub, u, flat, scratch);
  return total;
}

}  // namespace detail

inline RepairReport gamma_ranks(const RepairScheme& scheme) {
  const auto flat = scheme.flat();
  return detail::evaluate(scheme.sub(), scheme.failed(), flat);
}

/// A scheme that always repairs: the products M_j^l P_i^{(l)} run through
/// 1, zeta, ..., zeta^(alpha-1), a basis of GF(p^m) over GF(p^s).
inline RepairScheme naive_scheme(const Subpacketization& sub, std::size_t failed) {
  const auto& code = sub.code;
  const Field& f = code.field();
  if (failed < 1 || failed > code.k()) throw Error(Errc::InvalidScheme, "failed node out of range");
  std::vector<std::vector<Element>> el(code.parities());
  std::int64_t idx = 0;
  for (std::size_t l = 0; l < code.parities(); ++l) {
    const Element p = code.coeff(failed, code.k() + 1 + l);
    if (p.is_zero()) throw Error(Errc::InvalidCode, "zero parity coefficient");
    for (unsigned j = 0; j < sub.beta; ++j) el[l].push_back(f.div(f.pow_zeta(idx++), p));
  }
  return RepairScheme(sub, failed, std::move(el));
}

/// Re-expresses a scheme over GF(p^s) as one over GF(p^(s/a)): each element M
/// becomes M, M g, ..., M g^(a-1) for the generator g of GF(p^s).
inline RepairScheme lift_scheme(const RepairScheme& scheme, unsigned a) {
  const auto& sub = scheme.sub();
  if (a == 0 || sub.s % a != 0)
    throw Error(Errc::IncompatibleLift, "lift factor " + std::to_string(a) + " does not divide s=" + std::to_string(sub.s));
  if (a == 1) return scheme;
  const Field& f = scheme.code().field();
  Subpacketization finer = make_sub(scheme.code(), sub.s / a);
  std::vector<std::vector<Element>> el;
  for (const auto& row : scheme.elements()) {
    std::vector<Element> lifted;
    for (Element m : row) {
      Element x = m;
      for (unsigned t = 0; t < a; ++t) {
        lifted.push_back(x);
        x = f.mul(x, sub.subfield.generator);
      }
    }
    el.push_back(std::move(lifted));
  }
  return RepairScheme(std::move(finer), scheme.failed(), std::move(el));
}

/// Explicit repair matrices R^l (m x s*beta over GF(p)), one per parity node.
struct MatrixScheme {
  VectorRep reference;
  std::vector<Matrix> matrices;
};

inline VectorRep unit_reference(const Field& f) {
  VectorRep r(f.degree(), 0);
  r[0] = 1;
  return r;
}

/// Column (j, t) of R^l is (r^T g(M_j^l w_t))^T, where w_t runs over the
/// subfield basis; for s = 1 that is just r^T g(M_j^l).
inline MatrixScheme realize_matrices(const RepairScheme& scheme, const VectorRep& reference) {
  const auto& sub = scheme.sub();
  const Field& f = scheme.code().field();
  const unsigned m = f.degree();
  if (reference.size() != m) throw Error(Errc::DimensionMismatch, "reference length differs from m");
  if (std::all_of(reference.begin(), reference.end(), [](Scalar x) { return x == 0; }))
    throw Error(Errc::ZeroReference, "reference vector must be nonzero");
  const PrimeField fp = f.base();
  const auto basis = f.subfield_basis(sub.subfield);

  MatrixScheme out{reference, {}};
  for (const auto& row : scheme.elements()) {
    Matrix r(m, static_cast<std::size_t>(sub.s) * sub.beta);
    std::size_t col = 0;
    for (Element el : row)
      for (Element w : basis) {
        const auto v = left_multiply(reference, f.mult_operator(f.mul(el, w)).mat, fp);
        for (unsigned q = 0; q < m; ++q) r(q, col) = v[q];
        ++col;
      }
    out.matrices.push_back(std::move(r));
  }
  return out;
}

namespace detail {

inline void check_matrices(const Subpacketization& sub, const MatrixScheme& mat) {
  const unsigned m = sub.code.field().degree();
  if (mat.matrices.size() != sub.code.parities())
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(sub.code.parities()) + " repair matrices");
  for (std::size_t l = 0; l < mat.matrices.size(); ++l) {
    const Matrix& r = mat.matrices[l];
    if (r.rows() != m || r.cols() != static_cast<std::size_t>(sub.s) * sub.beta)
      throw Error(Errc::DimensionMismatch, "repair matrix " + std::to_string(l) + " is " + std::to_string(r.rows()) + "x" +
                                               std::to_string(r.cols()));
    for (std::size_t c = 0; c < r.cols(); ++c)
      if (r.column_is_zero(c))
        throw Error(Errc::InvalidMatrix, "repair matrix " + std::to_string(l) + " column " + std::to_string(c) + " is zero");
  }
}

// Stacked blocks (R^l)^T g(P_u^{(l)}) for systematic node u.
inline Matrix interference_block(const Subpacketization& sub, const MatrixScheme& mat, std::size_t u) {
  const auto& code = sub.code;
  const Field& f = code.field();
  const PrimeField fp = f.base();
  Matrix block(0, f.degree());
  for (std::size_t l = 0; l < code.parities(); ++l) {
    const Matrix part = multiply(transpose(mat.matrices[l]), f.mult_operator(code.coeff(u, code.k() + 1 + l)).mat, fp);
    for (std::size_t r = 0; r < part.rows(); ++r) block.append_row(part.row(r));
  }
  return block;
}

}  // namespace detail

/// Bandwidth of explicit repair matrices, from GF(p) ranks of the stacked
/// interference blocks.
inline RepairReport gamma_ranks_matrix(const Subpacketization& sub, std::size_t failed, const MatrixScheme& mat) {
  if (failed < 1 || failed > sub.code.k()) throw Error(Errc::InvalidScheme, "failed node out of range");
  detail::check_matrices(sub, mat);
  const PrimeField fp = sub.code.field().base();
  RepairReport rep;
  rep.failed = failed;
  rep.s = sub.s;
  rep.alpha = sub.alpha;
  rep.beta = sub.beta;
  const Baselines b = baselines(sub);
  rep.naive_bw = b.naive;
  rep.cutset_bw = b.cutset;
  rep.symbol_bits = sub.symbol_bits();
  for (std::size_t u = 1; u <= sub.code.k(); ++u) {
    const std::size_t r = rank(detail::interference_block(sub, mat, u), fp);
    rep.gammas.push_back(static_cast<unsigned>((r + sub.s - 1) / sub.s));
  }
  rep.feasible = rep.gammas[failed - 1] == sub.alpha;
  rep.total_bw = std::accumulate(rep.gammas.begin(), rep.gammas.end(), 0u);
  rep.interference_bw = rep.total_bw - rep.gammas[failed - 1];
  return rep;
}

struct RecoveryResult {
  Element value;                  // recovered symbol y_i
  VectorRep coords;               // f(y_i) over GF(p)
  std::vector<unsigned> download; // GF(p) symbols fetched from each node 1..n (0 for the failed node)
  unsigned base_symbols = 0;      // total GF(p) symbols moved
  unsigned subfield_symbols = 0;  // base_symbols / s
  double bits = 0.0;
};

/// Simulates the repair of scheme.failed() from the surviving nodes of a codeword.
/// Parity node l sends (R^l)^T f(y_l); systematic node u sends B_u f(x_u) where
/// B_u is the reduced echelon basis of its interference block.
inline RecoveryResult recover_node(const Codeword& word, const RepairScheme& scheme, const VectorRep& reference) {
  const auto& sub = scheme.sub();
  const auto& code = sub.code;
  const Field& f = code.field();
  const PrimeField fp = f.base();
  const unsigned m = f.degree();
  const std::size_t i = scheme.failed();
  if (word.symbols.size() != code.n())
    throw Error(Errc::LengthMismatch, "codeword has " + std::to_string(word.symbols.size()) + " symbols, code has n=" +
                                          std::to_string(code.n()));
  if (!gamma_ranks(scheme).feasible) throw Error(Errc::InfeasibleScheme, "scheme cannot repair node " + std::to_string(i));

  const MatrixScheme mat = realize_matrices(scheme, reference);
  RecoveryResult res;
  res.download.assign(code.n(), 0);

  std::vector<Scalar> received;
  for (std::size_t l = 0; l < code.parities(); ++l) {
    const std::size_t node = code.k() + 1 + l;
    const auto part = multiply(transpose(mat.matrices[l]), f.vector_rep(word.symbols[node - 1]), fp);
    received.insert(received.end(), part.begin(), part.end());
    res.download[node - 1] = static_cast<unsigned>(part.size());
  }

  for (std::size_t u = 1; u <= code.k(); ++u) {
    if (u == i) continue;
    const Matrix block = detail::interference_block(sub, mat, u);
    const Echelon basis = row_reduce(block, fp);
    const auto sent = multiply(basis.reduced, f.vector_rep(word.symbols[u - 1]), fp);
    res.download[u - 1] = static_cast<unsigned>(sent.size());
    // Row a of the block equals sum_q a[pivot_q] * basis_q.
    for (std::size_t r = 0; r < block.rows(); ++r) {
      Scalar interference = 0;
      for (std::size_t q = 0; q < basis.rank(); ++q)
        interference = fp.add(interference, fp.mul(block(r, basis.pivots[q]), sent[q]));
      received[r] = fp.sub(received[r], interference);
    }
  }

  const Matrix useful = detail::interference_block(sub, mat, i);
  const auto x = solve(useful, received, fp);
  if (!x || rank(useful, fp) != m) throw Error(Errc::InfeasibleScheme, "useful block is rank deficient");
  res.coords = *x;
  res.value = f.from_vector(res.coords);
  res.base_symbols = std::accumulate(res.download.begin(), res.download.end(), 0u);
  res.subfield_symbols = res.base_symbols / sub.s;
  res.bits = res.base_symbols * std::log2(static_cast<double>(f.characteristic()));
  return res;
}

inline RecoveryResult recover_node(const Codeword& word, const RepairScheme& scheme) {
  return recover_node(word, scheme, unit_reference(scheme.code().field()));
}

}  // namespace scalarrepair
