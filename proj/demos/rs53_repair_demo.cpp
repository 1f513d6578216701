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

// Repairs node 1 of the (5,3) Reed-Solomon code over GF(16) while downloading
// 10 bits instead of the 12 a naive repair needs.

#include <iostream>

#include "scalarrepair/scalarrepair.hpp"

using namespace scalarrepair;

int main() {
  const Field gf16 = Field::from_poly(2, {1, 1, 0, 0, 1});
  const Element w = gf16.pow_zeta(3);  // fifth root of unity

  std::vector<Element> points;
  for (int e = 1; e <= 5; ++e) points.push_back(gf16.pow(w, e));
  const CodeSpec code = normalize_parity(rs_systematic(gf16, points, 3, "rs53"));

  const Subpacketization sub = make_sub(code, 1);
  const Element one = gf16.one();
  const Element g1 = gf16.add(gf16.pow(w, 3), one);
  const Element g2 = gf16.add(gf16.pow(w, 2), one);
  const Element f1 = gf16.mul(w, g1);
  const Element f2 = gf16.mul(g2, gf16.add(gf16.pow(w, 2), one));
  const RepairScheme scheme(sub, 1, {{f1, f2}, {g1, g2}});

  const RepairReport report = gamma_ranks(scheme);
  std::cout << "gammas:";
  for (unsigned g : report.gammas) std::cout << ' ' << g;
  std::cout << "\ntotal " << report.total_bw << " bits, naive " << report.naive_bw << ", cut-set " << report.cutset_bw << "\n";

  const std::vector<Element> message{gf16.pow_zeta(7), gf16.pow_zeta(2), gf16.zero()};
  const Codeword word = encode(code, message);
  const RecoveryResult rec = recover_node(word, scheme);
  std::cout << "lost " << gf16.to_string(word.symbols[0]) << ", recovered " << gf16.to_string(rec.value) << " from "
            << rec.bits << " bits\n";
  return rec.value == word.symbols[0] ? 0 : 1;
}
