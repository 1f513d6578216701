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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scalarrepair/errors.hpp"
#include "scalarrepair/gf.hpp"

namespace scalarrepair {

/// A systematic (n, k) linear code over GF(p^m). Nodes are numbered 1..n;
/// nodes 1..k are systematic, k+1..n are parity.
class CodeSpec {
 public:
  /// parity has k rows and n - k columns; parity[i-1][j-k-1] is the coefficient
  /// parity node j applies to message symbol i.
  CodeSpec(std::string name, std::size_t n, std::size_t k, Field field, std::vector<std::vector<Element>> parity)
      : name_(std::move(name)), n_(n), k_(k), field_(std::move(field)), parity_(std::move(parity)) {
    if (k_ == 0 || k_ >= n_) throw Error(Errc::InvalidCode, "need 0 < k < n, got n=" + std::to_string(n_) + " k=" + std::to_string(k_));
    if (parity_.size() != k_) throw Error(Errc::InvalidCode, "parity matrix must have k rows");
    for (const auto& row : parity_) {
      if (row.size() != n_ - k_) throw Error(Errc::InvalidCode, "parity matrix must have n-k columns");
      for (Element e : row) field_.check(e);
    }
  }

  const std::string& name() const { return name_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t parities() const { return n_ - k_; }
  const Field& field() const { return field_; }
  const std::vector<std::vector<Element>>& parity() const { return parity_; }

  /// P_i^{(j)} with 1-based systematic node i and parity node j.
  Element coeff(std::size_t i, std::size_t j) const { return parity_.at(i - 1).at(j - k_ - 1); }

  friend bool operator==(const CodeSpec&, const CodeSpec&) = default;

 private:
  std::string name_;
  std::size_t n_;
  std::size_t k_;
  Field field_;
  std::vector<std::vector<Element>> parity_;
};

struct Codeword {
  std::vector<Element> symbols;
};

/// Systematic Reed-Solomon code: P_i^{(j)} is the Lagrange basis polynomial of
/// the first k evaluation points, l_i, evaluated at point j.
inline CodeSpec rs_systematic(const Field& field, std::span<const Element> eval_points, std::size_t k,
                              std::string name = "rs") {
  const std::size_t n = eval_points.size();
  if (k == 0 || k >= n) throw Error(Errc::InvalidCode, "need 0 < k < n");
  for (std::size_t a = 0; a < n; ++a) {
    field.check(eval_points[a]);
    for (std::size_t b = a + 1; b < n; ++b)
      if (eval_points[a] == eval_points[b])
        throw Error(Errc::DuplicateEvalPoints, "points " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " coincide");
  }
  std::vector<std::vector<Element>> parity(k, std::vector<Element>(n - k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = k; j < n; ++j) {
      Element num = field.one(), den = field.one();
      for (std::size_t t = 0; t < k; ++t) {
        if (t == i) continue;
        num = field.mul(num, field.sub(eval_points[j], eval_points[t]));
        den = field.mul(den, field.sub(eval_points[i], eval_points[t]));
      }
      parity[i][j - k] = field.div(num, den);
    }
  return CodeSpec(std::move(name), n, k, field, std::move(parity));
}

/// Scales each parity row so the first parity column is all ones. Rows whose
/// leading coefficient is zero are left as they are.
inline CodeSpec normalize_parity(const CodeSpec& code) {
  const Field& f = code.field();
  auto parity = code.parity();
  for (auto& row : parity) {
    if (row.front().is_zero()) continue;
    const Element s = f.inv(row.front());
    for (auto& e : row) e = f.mul(e, s);
  }
  return CodeSpec(code.name(), code.n(), code.k(), f, std::move(parity));
}

inline bool is_normalized(const CodeSpec& code) {
  for (const auto& row : code.parity())
    if (row.front() != code.field().one()) return false;
  return true;
}

namespace detail {

// Rank of a square matrix over the extension field by Gaussian elimination.
inline bool invertible(std::vector<std::vector<Element>> a, const Field& f) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && a[sel][c].is_zero()) ++sel;
    if (sel == n) return false;
    std::swap(a[sel], a[c]);
    const Element inv = f.inv(a[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const Element factor = f.mul(a[r][c], inv);
      for (std::size_t k = c; k < n; ++k) a[r][k] = f.sub(a[r][k], f.mul(factor, a[c][k]));
    }
  }
  return true;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

inline constexpr std::uint64_t kMaxMdsSubsets = 1'000'000;

/// True iff every choice of k nodes determines the message.
inline bool verify_mds(const CodeSpec& code) {
  const std::size_t n = code.n(), k = code.k();
  if (detail::binomial(n, k) > kMaxMdsSubsets)
    throw Error(Errc::TooManySubsets, "C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds the enumeration cap");
  const Field& f = code.field();

  // generator row for node j (1-based)
  auto row_of = [&](std::size_t j) {
    std::vector<Element> r(k, f.zero());
    if (j <= k) {
      r[j - 1] = f.one();
    } else {
      for (std::size_t i = 1; i <= k; ++i) r[i - 1] = code.coeff(i, j);
    }
    return r;
  };

  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i + 1;
  while (true) {
    std::vector<std::vector<Element>> sub;
    sub.reserve(k);
    for (std::size_t j : pick) sub.push_back(row_of(j));
    if (!detail::invertible(std::move(sub), f)) return false;
    // next combination in lexicographic order
    std::size_t pos = k;
    while (pos > 0 && pick[pos - 1] == n - k + pos) --pos;
    if (pos == 0) break;
    ++pick[pos - 1];
    for (std::size_t t = pos; t < k; ++t) pick[t] = pick[t - 1] + 1;
  }
  return true;
}

inline Codeword encode(const CodeSpec& code, std::span<const Element> message) {
  if (message.size() != code.k())
    throw Error(Errc::LengthMismatch, "message has " + std::to_string(message.size()) + " symbols, code expects " + std::to_string(code.k()));
  const Field& f = code.field();
  Codeword y;
  y.symbols.assign(message.begin(), message.end());
  for (Element e : message) f.check(e);
  for (std::size_t j = code.k() + 1; j <= code.n(); ++j) {
    Element acc = f.zero();
    for (std::size_t i = 1; i <= code.k(); ++i) acc = f.add(acc, f.mul(code.coeff(i, j), message[i - 1]));
    y.symbols.push_back(acc);
  }
  return y;
}

}  // namespace scalarrepair
