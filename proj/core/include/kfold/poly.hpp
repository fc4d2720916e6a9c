#pragma once

#include <algorithm>
#include <climits>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kfold/cyclotomic.hpp"
#include "kfold/rational.hpp"

namespace kfold {

// x^i y^j
struct Monomial {
  int i = 0;
  int j = 0;
  int degree() const { return i + j; }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.i == b.i && a.j == b.j; }
};

// Ascending total degree; within a degree, descending power of x.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.i > b.i;
  }
};

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static bool is_zero(const Rational& c) { return sgn(c) == 0; }
  static Rational from_int(long v) { return Rational(v); }
};

template <>
struct CoeffTraits<CycloNum> {
  static bool is_zero(const CycloNum& c) { return c.is_zero(); }
  static CycloNum from_int(long v) { return CycloNum(v); }
};

template <>
struct CoeffTraits<std::complex<double>> {
  static bool is_zero(const std::complex<double>& c) { return c == 0.0; }
  static std::complex<double> from_int(long v) { return {static_cast<double>(v), 0.0}; }
};

enum class Var { X, Y };

template <class C>
class BivarPoly {
 public:
  using Coeff = C;
  using Terms = std::map<Monomial, C, GradedLex>;

  BivarPoly() = default;

  static BivarPoly monomial(int i, int j, const C& c) {
    BivarPoly p;
    p.add_term(i, j, c);
    return p;
  }
  static BivarPoly constant(const C& c) { return monomial(0, 0, c); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  C coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? CoeffTraits<C>::from_int(0) : it->second;
  }

  void add_term(int i, int j, const C& c) {
    if (i < 0 || j < 0) throw std::invalid_argument("negative exponent in polynomial term");
    if (CoeffTraits<C>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(Monomial{i, j}, c);
    if (!inserted) {
      it->second += c;
      if (CoeffTraits<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  void set_term(int i, int j, const C& c) {
    terms_.erase({i, j});
    add_term(i, j, c);
  }

  // Lowest total degree present; INT_MAX for the zero polynomial.
  int order() const { return terms_.empty() ? INT_MAX : terms_.begin()->first.degree(); }
  int total_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

  BivarPoly homogeneous_part(int d) const {
    BivarPoly out;
    for (const auto& [m, c] : terms_)
      if (m.degree() == d) out.terms_.emplace(m, c);
    return out;
  }

  BivarPoly& operator+=(const BivarPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m.i, m.j, c);
    return *this;
  }
  BivarPoly& operator-=(const BivarPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m.i, m.j, -c);
    return *this;
  }
  template <class S>
  BivarPoly& scale(const S& s) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      if (CoeffTraits<C>::is_zero(it->second))
        it = terms_.erase(it);
      else
        ++it;
    }
    return *this;
  }

  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  BivarPoly operator-() const {
    BivarPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) { return mul_truncated(a, b, INT_MAX); }

  friend bool operator==(const BivarPoly& a, const BivarPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib)
      if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
    return true;
  }
  friend bool operator!=(const BivarPoly& a, const BivarPoly& b) { return !(a == b); }

  // Product keeping only terms of total degree <= max_degree.
  static BivarPoly mul_truncated(const BivarPoly& a, const BivarPoly& b, int max_degree) {
    BivarPoly out;
    for (const auto& [ma, ca] : a.terms_) {
      if (ma.degree() > max_degree) break;
      for (const auto& [mb, cb] : b.terms_) {
        if (ma.degree() + mb.degree() > max_degree) break;
        out.add_term(ma.i + mb.i, ma.j + mb.j, ca * cb);
      }
    }
    return out;
  }

 private:
  Terms terms_;
};

using RatPoly = BivarPoly<Rational>;
using CycloPoly = BivarPoly<CycloNum>;
using ComplexPoly = BivarPoly<std::complex<double>>;

template <class C>
BivarPoly<C> partial_derivative(const BivarPoly<C>& f, Var v) {
  BivarPoly<C> out;
  for (const auto& [m, c] : f.terms()) {
    int e = v == Var::X ? m.i : m.j;
    if (e == 0) continue;
    C d = c;
    d *= CoeffTraits<C>::from_int(e);
    if (v == Var::X)
      out.add_term(m.i - 1, m.j, d);
    else
      out.add_term(m.i, m.j - 1, d);
  }
  return out;
}

template <class C>
BivarPoly<C> truncate_jet(const BivarPoly<C>& f, int p) {
  BivarPoly<C> out;
  for (const auto& [m, c] : f.terms())
    if (m.degree() <= p) out.add_term(m.i, m.j, c);
  return out;
}

template <class C>
BivarPoly<C> exact_divide_by_y(const BivarPoly<C>& f) {
  BivarPoly<C> out;
  for (const auto& [m, c] : f.terms()) {
    if (m.j == 0) throw std::domain_error("polynomial is not divisible by y");
    out.add_term(m.i, m.j - 1, c);
  }
  return out;
}

template <class C>
BivarPoly<C> exact_divide_by_x(const BivarPoly<C>& f) {
  BivarPoly<C> out;
  for (const auto& [m, c] : f.terms()) {
    if (m.i == 0) throw std::domain_error("polynomial is not divisible by x");
    out.add_term(m.i - 1, m.j, c);
  }
  return out;
}

template <class C>
bool divisible_by_x(const BivarPoly<C>& f) {
  for (const auto& [m, c] : f.terms())
    if (m.i == 0) return false;
  return !f.is_zero();
}

template <class C>
bool divisible_by_y(const BivarPoly<C>& f) {
  for (const auto& [m, c] : f.terms())
    if (m.j == 0) return false;
  return !f.is_zero();
}

template <class C>
C evaluate(const BivarPoly<C>& f, const C& x, const C& y) {
  C acc = CoeffTraits<C>::from_int(0);
  for (const auto& [m, c] : f.terms()) {
    C t = c;
    for (int a = 0; a < m.i; ++a) t *= x;
    for (int b = 0; b < m.j; ++b) t *= y;
    acc += t;
  }
  return acc;
}

// f(x, c*y). Rational coefficients are promoted to the conductor of c.
CycloPoly poly_compose_scale_y(const CycloPoly& f, const CycloNum& c);
CycloPoly poly_compose_scale_y(const RatPoly& f, const CycloNum& c);

CycloPoly promote(const RatPoly& f, int k = 1);
CycloPoly promote(const CycloPoly& f, int k);
ComplexPoly to_complex(const CycloPoly& f);
ComplexPoly to_complex(const RatPoly& f);

// Smallest conductor that holds every coefficient (1 for the zero polynomial).
int poly_conductor(const CycloPoly& f);

// Human-readable form in graded order, e.g. "x*y + 3/2*y^2".
std::string to_string(const RatPoly& f);
std::string to_string(const CycloPoly& f);

}  // namespace kfold
