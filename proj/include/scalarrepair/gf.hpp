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

// Extension-field arithmetic over GF(p^m) together with the vectorization
// machinery: coordinates over GF(p), companion-matrix multiplication
// operators, subfields and rank over a subfield.
//
// Elements are stored by discrete logarithm with respect to the primitive
// element zeta = x mod P(x), the root associated with the companion matrix.

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "scalarrepair/errors.hpp"
#include "scalarrepair/linalg.hpp"

namespace scalarrepair {

/// Largest supported field order p^m.
inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

/// An element of GF(p^m): either zero or zeta^exp with exp in [0, p^m - 2].
/// Arithmetic goes through the owning Field.
class Element {
 public:
  static constexpr std::int32_t kZeroExp = -1;

  constexpr Element() = default;
  static constexpr Element zero() { return Element{}; }
  /// zeta^e for an already-reduced exponent.
  static constexpr Element from_exponent(std::int32_t e) { return Element(e); }

  constexpr bool is_zero() const { return exp_ == kZeroExp; }
  constexpr std::int32_t exponent() const { return exp_; }

  friend constexpr auto operator<=>(Element, Element) = default;

 private:
  constexpr explicit Element(std::int32_t e) : exp_(e) {}
  std::int32_t exp_ = kZeroExp;
};

/// Coordinates b_0..b_{m-1} over GF(p) of b = sum b_i zeta^i.
using VectorRep = std::vector<Scalar>;

/// The m x m GF(p) matrix g(b) realizing multiplication by b on coordinates.
struct MultOperator {
  Element element;
  Matrix mat;
};

/// GF(p^s) embedded in GF(p^m), s | m.
struct Subfield {
  unsigned degree = 1;     // s
  std::uint32_t order = 0; // p^s
  Element generator;       // zeta^((p^m - 1) / (p^s - 1))

  friend bool operator==(const Subfield&, const Subfield&) = default;
};

class Field {
 public:
  /// Builds GF(p^m) from the monic polynomial a_0 + a_1 x + ... + x^m given as {a_0, ..., a_m}.
  static Field from_poly(Scalar p, std::vector<Scalar> coeffs);

  Scalar characteristic() const { return t_->p; }
  unsigned degree() const { return t_->m; }
  std::uint32_t size() const { return t_->size; }
  std::uint32_t group_order() const { return t_->size - 1; }
  const std::vector<Scalar>& poly() const { return t_->poly; }
  PrimeField base() const { return PrimeField(t_->p); }

  Element zero() const { return Element::zero(); }
  Element one() const { return Element::from_exponent(0); }
  Element zeta() const { return pow_zeta(1); }
  Element pow_zeta(std::int64_t e) const {
    const std::int64_t n = group_order();
    return Element::from_exponent(static_cast<std::int32_t>(((e % n) + n) % n));
  }

  /// True when the element's exponent is valid for this field.
  bool contains(Element a) const {
    return a.is_zero() || (a.exponent() >= 0 && static_cast<std::uint32_t>(a.exponent()) < group_order());
  }
  void check(Element a) const {
    if (!contains(a)) throw Error(Errc::FieldMismatch, "exponent " + std::to_string(a.exponent()) + " outside " + name());
  }

  /// Polynomial index sum b_i p^i of an element (equals the bit pattern when p = 2).
  std::uint32_t index(Element a) const { return a.is_zero() ? 0 : t_->exp[static_cast<std::size_t>(a.exponent())]; }
  Element from_index(std::uint32_t idx) const {
    return idx == 0 ? Element::zero() : Element::from_exponent(t_->log[idx]);
  }

  Element add(Element a, Element b) const { return from_index(add_index(index(a), index(b))); }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element neg(Element a) const {
    if (a.is_zero() || t_->p == 2) return a;
    // -1 = zeta^((p^m - 1) / 2) for odd p
    return mul(a, Element::from_exponent(static_cast<std::int32_t>(group_order() / 2)));
  }
  Element mul(Element a, Element b) const {
    if (a.is_zero() || b.is_zero()) return Element::zero();
    return Element::from_exponent(static_cast<std::int32_t>((static_cast<std::uint32_t>(a.exponent()) +
                                                             static_cast<std::uint32_t>(b.exponent())) %
                                                            group_order()));
  }
  Element inv(Element a) const {
    if (a.is_zero()) throw Error(Errc::DivisionByZero, "inverse of 0 in " + name());
    return pow_zeta(-static_cast<std::int64_t>(a.exponent()));
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::int64_t e) const {
    if (a.is_zero()) {
      if (e < 0) throw Error(Errc::DivisionByZero, "negative power of 0");
      return e == 0 ? one() : a;
    }
    return pow_zeta(static_cast<std::int64_t>(a.exponent()) * (e % static_cast<std::int64_t>(group_order())));
  }

  VectorRep vector_rep(Element a) const {
    VectorRep v(degree());
    std::uint32_t idx = index(a);
    for (auto& c : v) {
      c = idx % t_->p;
      idx /= t_->p;
    }
    return v;
  }

  Element from_vector(std::span<const Scalar> v) const {
    if (v.size() != degree()) throw Error(Errc::DimensionMismatch, "vector length differs from extension degree");
    std::uint32_t idx = 0;
    for (std::size_t i = v.size(); i-- > 0;) {
      if (v[i] >= t_->p) throw Error(Errc::DimensionMismatch, "coordinate outside GF(p)");
      idx = idx * t_->p + v[i];
    }
    return from_index(idx);
  }

  /// Companion matrix of the defining polynomial (subdiagonal ones, last column -a_i).
  Matrix companion() const {
    const unsigned m = degree();
    const PrimeField fp = base();
    Matrix c(m, m);
    for (unsigned r = 1; r < m; ++r) c(r, r - 1) = 1;
    for (unsigned r = 0; r < m; ++r) c(r, m - 1) = fp.neg(t_->poly[r]);
    return c;
  }

  /// g(b): column j holds f(b zeta^j).
  MultOperator mult_operator(Element b) const {
    const unsigned m = degree();
    Matrix mat(m, m);
    if (!b.is_zero()) {
      for (unsigned j = 0; j < m; ++j) {
        const VectorRep col = vector_rep(mul(b, pow_zeta(j)));
        for (unsigned r = 0; r < m; ++r) mat(r, j) = col[r];
      }
    }
    return {b, std::move(mat)};
  }

  /// The unique operator M with source^T M = target^T.
  MultOperator find_left_operator(std::span<const Scalar> target, std::span<const Scalar> source) const;

  Subfield subfield(unsigned s) const {
    if (s == 0 || degree() % s != 0)
      throw Error(Errc::IncompatibleSubfield, "degree " + std::to_string(s) + " does not divide " + std::to_string(degree()));
    Subfield sub;
    sub.degree = s;
    sub.order = 1;
    for (unsigned i = 0; i < s; ++i) sub.order *= t_->p;
    sub.generator = pow_zeta(group_order() / (sub.order - 1));
    return sub;
  }

  bool is_in_subfield(Element x, const Subfield& sub) const { return x.is_zero() || pow(x, sub.order) == x; }

  /// {1, g, ..., g^(s-1)} for the subfield generator g; a GF(p)-basis of the subfield.
  std::vector<Element> subfield_basis(const Subfield& sub) const {
    std::vector<Element> basis;
    Element w = one();
    for (unsigned t = 0; t < sub.degree; ++t) {
      basis.push_back(w);
      w = mul(w, sub.generator);
    }
    return basis;
  }

  /// Dimension over GF(p^s) of the span of elems.
  std::size_t rank_over_subfield(std::span<const Element> elems, const Subfield& sub) const {
    if (elems.empty()) return 0;
    const std::vector<Element> basis = subfield_basis(sub);
    std::size_t r = 0;
    if (t_->p == 2) {
      std::vector<std::uint32_t> rows;
      rows.reserve(elems.size() * basis.size());
      for (Element a : elems)
        for (Element w : basis) rows.push_back(index(mul(w, a)));
      r = rank_gf2(rows);
    } else {
      Matrix rows(0, degree());
      for (Element a : elems)
        for (Element w : basis) rows.append_row(vector_rep(mul(w, a)));
      r = rank(rows, base());
    }
    return r / sub.degree;
  }

  std::string name() const { return "GF(" + std::to_string(t_->p) + "^" + std::to_string(t_->m) + ")"; }

  std::string to_string(Element a) const {
    if (a.is_zero()) return "0";
    return "z^" + std::to_string(a.exponent());
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.t_ == b.t_ || (a.t_->p == b.t_->p && a.t_->poly == b.t_->poly);
  }

 private:
  struct Tables {
    Scalar p = 2;
    unsigned m = 1;
    std::uint32_t size = 2;
    std::vector<Scalar> poly;
    std::vector<std::uint32_t> exp;  // exponent -> polynomial index
    std::vector<std::int32_t> log;   // polynomial index -> exponent (-1 for 0)
  };

  explicit Field(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}

  std::uint32_t add_index(std::uint32_t a, std::uint32_t b) const {
    if (t_->p == 2) return a ^ b;
    std::uint32_t out = 0, place = 1;
    for (unsigned i = 0; i < t_->m; ++i) {
      out += ((a % t_->p + b % t_->p) % t_->p) * place;
      a /= t_->p;
      b /= t_->p;
      place *= t_->p;
    }
    return out;
  }

  std::shared_ptr<const Tables> t_;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Remainder of num modulo a monic divisor, coefficients low to high.
inline std::vector<Scalar> poly_mod(std::vector<Scalar> num, const std::vector<Scalar>& den, const PrimeField& fp) {
  const std::size_t dd = den.size() - 1;
  for (std::size_t i = num.size(); i-- > dd;) {
    const Scalar lead = num[i];
    if (lead == 0) continue;
    for (std::size_t k = 0; k <= dd; ++k) num[i - dd + k] = fp.sub(num[i - dd + k], fp.mul(lead, den[k]));
  }
  num.resize(std::min(num.size(), dd));
  return num;
}

// Trial division by every monic polynomial of degree 1..m/2.
inline bool is_irreducible(const std::vector<Scalar>& poly, const PrimeField& fp) {
  const std::size_t m = poly.size() - 1;
  const Scalar p = fp.modulus();
  for (std::size_t d = 1; d <= m / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<Scalar> den(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        den[i] = static_cast<Scalar>(c % p);
        c /= p;
      }
      den[d] = 1;
      const auto rem = poly_mod(poly, den, fp);
      if (std::all_of(rem.begin(), rem.end(), [](Scalar s) { return s == 0; })) return false;
    }
  }
  return true;
}

}  // namespace detail

inline Field Field::from_poly(Scalar p, std::vector<Scalar> coeffs) {
  if (!detail::is_prime(p)) throw Error(Errc::InvalidPolynomial, "base " + std::to_string(p) + " is not prime");
  if (coeffs.size() < 2) throw Error(Errc::InvalidPolynomial, "polynomial needs degree at least 1");
  if (coeffs.back() != 1) throw Error(Errc::InvalidPolynomial, "polynomial must be monic");
  for (Scalar c : coeffs)
    if (c >= p) throw Error(Errc::InvalidPolynomial, "coefficient " + std::to_string(c) + " outside GF(p)");

  const unsigned m = static_cast<unsigned>(coeffs.size() - 1);
  std::uint64_t size = 1;
  for (unsigned i = 0; i < m; ++i) {
    size *= p;
    if (size > kMaxFieldOrder) throw Error(Errc::FieldTooLarge, "p^m exceeds 2^16");
  }

  const PrimeField fp(p);
  if ((m > 1 && coeffs[0] == 0) || !detail::is_irreducible(coeffs, fp))
    throw Error(Errc::NotIrreducible, "polynomial has a nontrivial factor over GF(" + std::to_string(p) + ")");

  auto t = std::make_shared<Tables>();
  t->p = p;
  t->m = m;
  t->size = static_cast<std::uint32_t>(size);
  t->poly = std::move(coeffs);

  // Primitive iff the companion matrix has full order p^m - 1.
  {
    const Field probe(t);
    const Matrix c = probe.companion();
    const Matrix id = Matrix::identity(m);
    const std::uint64_t order = size - 1;
    for (std::uint64_t q : detail::prime_factors(order))
      if (power(c, order / q, fp) == id)
        throw Error(Errc::NotPrimitive, "companion matrix order divides " + std::to_string(order / q));
  }

  t->exp.resize(size - 1);
  t->log.assign(size, Element::kZeroExp);
  std::vector<Scalar> coord(m, 0);
  coord[0] = 1;
  for (std::uint32_t e = 0; e + 1 < size; ++e) {
    std::uint32_t idx = 0;
    for (unsigned i = m; i-- > 0;) idx = idx * p + coord[i];
    if (t->log[idx] != Element::kZeroExp)
      throw Error(Errc::NotPrimitive, "zeta^" + std::to_string(e) + " repeats an earlier power");
    t->exp[e] = idx;
    t->log[idx] = static_cast<std::int32_t>(e);
    // multiply by zeta: b_j <- b_{j-1} - a_j b_{m-1}
    const Scalar top = coord[m - 1];
    for (unsigned j = m; j-- > 0;) {
      const Scalar prev = j == 0 ? 0 : coord[j - 1];
      coord[j] = fp.sub(prev, fp.mul(t->poly[j], top));
    }
  }
  return Field(std::move(t));
}

inline MultOperator Field::find_left_operator(std::span<const Scalar> target, std::span<const Scalar> source) const {
  const unsigned m = degree();
  if (target.size() != m || source.size() != m) throw Error(Errc::DimensionMismatch, "vector length differs from degree");
  auto nonzero = [](std::span<const Scalar> v) { return std::any_of(v.begin(), v.end(), [](Scalar s) { return s != 0; }); };
  if (!nonzero(target) || !nonzero(source)) throw Error(Errc::ZeroVector, "left operator needs nonzero vectors");

  // b -> source^T g(b) is GF(p)-linear in f(b); column i of the system is the image of zeta^i.
  const PrimeField fp = base();
  Matrix system(m, m);
  for (unsigned i = 0; i < m; ++i) {
    const auto image = left_multiply(source, mult_operator(pow_zeta(i)).mat, fp);
    for (unsigned r = 0; r < m; ++r) system(r, i) = image[r];
  }
  const auto coords = solve(system, target, fp);
  if (!coords) throw Error(Errc::ZeroVector, "no operator maps source to target");
  return mult_operator(from_vector(*coords));
}

}  // namespace scalarrepair
