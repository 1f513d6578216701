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

// Dense linear algebra over a prime field GF(p).

#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "scalarrepair/errors.hpp"

namespace scalarrepair {

using Scalar = std::uint32_t;

/// Scalar arithmetic modulo a prime p < 2^16 + 1.
class PrimeField {
 public:
  constexpr explicit PrimeField(Scalar p) : p_(p) {}

  constexpr Scalar modulus() const { return p_; }
  constexpr Scalar add(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} + b) % p_); }
  constexpr Scalar sub(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} + p_ - b) % p_); }
  constexpr Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  constexpr Scalar mul(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} * b) % p_); }

  constexpr Scalar pow(Scalar a, std::uint64_t e) const {
    std::uint64_t r = 1 % p_, base = a % p_;
    while (e) {
      if (e & 1) r = r * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<Scalar>(r);
  }

  Scalar inv(Scalar a) const {
    if (a % p_ == 0) throw Error(Errc::DivisionByZero, "inverse of 0 in GF(p)");
    return pow(a, p_ - 2);
  }

 private:
  Scalar p_;
};

/// Row-major matrix of GF(p) scalars. The modulus is passed to each operation.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) throw Error(Errc::DimensionMismatch, "ragged matrix rows");
      for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  Scalar operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  std::vector<Scalar> column(std::size_t c) const {
    std::vector<Scalar> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  bool column_is_zero(std::size_t c) const {
    for (std::size_t r = 0; r < rows_; ++r)
      if ((*this)(r, c) != 0) return false;
    return true;
  }

  void append_row(std::span<const Scalar> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw Error(Errc::DimensionMismatch, "appended row has wrong length");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
  return t;
}

inline Matrix multiply(const Matrix& a, const Matrix& b, const PrimeField& fp) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar x = a(r, k);
      if (x == 0) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) = fp.add(out(r, c), fp.mul(x, b(k, c)));
    }
  return out;
}

inline std::vector<Scalar> multiply(const Matrix& a, std::span<const Scalar> v, const PrimeField& fp) {
  if (a.cols() != v.size()) throw Error(Errc::DimensionMismatch, "matrix-vector shape mismatch");
  std::vector<Scalar> out(a.rows(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out[r] = fp.add(out[r], fp.mul(a(r, c), v[c]));
  return out;
}

/// Row vector times matrix: v^T A.
inline std::vector<Scalar> left_multiply(std::span<const Scalar> v, const Matrix& a, const PrimeField& fp) {
  if (a.rows() != v.size()) throw Error(Errc::DimensionMismatch, "vector-matrix shape mismatch");
  std::vector<Scalar> out(a.cols(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (v[r] == 0) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) out[c] = fp.add(out[c], fp.mul(v[r], a(r, c)));
  }
  return out;
}

inline Matrix add(const Matrix& a, const Matrix& b, const PrimeField& fp) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::DimensionMismatch, "matrix sum shape mismatch");
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = fp.add(a(r, c), b(r, c));
  return out;
}

inline Matrix scale(const Matrix& a, Scalar s, const PrimeField& fp) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = fp.mul(a(r, c), s);
  return out;
}

inline Matrix power(const Matrix& a, std::uint64_t e, const PrimeField& fp) {
  if (a.rows() != a.cols()) throw Error(Errc::DimensionMismatch, "power of non-square matrix");
  Matrix result = Matrix::identity(a.rows());
  Matrix base = a;
  while (e) {
    if (e & 1) result = multiply(result, base, fp);
    base = multiply(base, base, fp);
    e >>= 1;
  }
  return result;
}

struct Echelon {
  Matrix reduced;                  // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots; // pivot column of each kept row
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination; the returned rows are a canonical basis of the row space.
inline Echelon row_reduce(Matrix a, const PrimeField& fp) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < a.cols() && lead < a.rows(); ++c) {
    std::size_t sel = lead;
    while (sel < a.rows() && a(sel, c) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != lead)
      for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(sel, k), a(lead, k));
    const Scalar inv = fp.inv(a(lead, c));
    for (std::size_t k = 0; k < a.cols(); ++k) a(lead, k) = fp.mul(a(lead, k), inv);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == lead || a(r, c) == 0) continue;
      const Scalar f = a(r, c);
      for (std::size_t k = 0; k < a.cols(); ++k) a(r, k) = fp.sub(a(r, k), fp.mul(f, a(lead, k)));
    }
    pivots.push_back(c);
    ++lead;
  }
  Matrix kept(pivots.size(), a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) kept(r, k) = a(r, k);
  return {std::move(kept), std::move(pivots)};
}

inline std::size_t rank(const Matrix& a, const PrimeField& fp) { return row_reduce(a, fp).rank(); }

/// Rank of GF(2) row vectors packed as bitmasks.
inline std::size_t rank_gf2(std::span<const std::uint32_t> rows) {
  std::uint32_t basis[32] = {};
  std::size_t r = 0;
  for (std::uint32_t v : rows) {
    for (std::size_t i = 0; i < r && v; ++i) {
      if ((v ^ basis[i]) < v) v ^= basis[i];
    }
    if (v) {
      // keep basis sorted by leading bit, descending, so the min-reduction above is a full reduction
      std::size_t pos = r++;
      while (pos > 0 && basis[pos - 1] < v) {
        basis[pos] = basis[pos - 1];
        --pos;
      }
      basis[pos] = v;
    }
  }
  return r;
}

/// Some solution x of A x = b, or nullopt when the system is inconsistent.
inline std::optional<std::vector<Scalar>> solve(const Matrix& a, std::span<const Scalar> b, const PrimeField& fp) {
  if (b.size() != a.rows()) throw Error(Errc::DimensionMismatch, "right-hand side length");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const Echelon e = row_reduce(std::move(aug), fp);
  std::vector<Scalar> x(a.cols(), 0);
  for (std::size_t r = 0; r < e.rank(); ++r) {
    if (e.pivots[r] == a.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced(r, a.cols());
  }
  return x;
}

}  // namespace scalarrepair
