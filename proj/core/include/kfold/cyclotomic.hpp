#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kfold/rational.hpp"

namespace kfold {

int euler_phi(int n);

// Integer coefficients of the n-th cyclotomic polynomial, constant term
// first. Computed once per conductor and cached for the process lifetime.
const std::vector<long>& cyclotomic_polynomial(int n);

namespace detail {
struct CycloTables;
}

// Element of Q(zeta_k) in the power basis 1, zeta, ..., zeta^(phi(k)-1).
// Conductor 1 is the rational field; such values combine with any other
// conductor by promotion. Mixing two different conductors > 1 is an error.
class CycloNum {
 public:
  CycloNum();
  explicit CycloNum(long v);
  CycloNum(const Rational& q);  // NOLINT(google-explicit-constructor)
  CycloNum(int k, const Rational& q);
  CycloNum(int k, std::vector<Rational> coeffs);

  static CycloNum zero(int k);
  static CycloNum one(int k);
  static CycloNum root_of_unity(int k, long j);

  int conductor() const;
  int degree() const;  // phi(k)
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  Rational rational_part() const { return c_[0]; }

  // Re-expresses this value in Q(zeta_m); m must be a multiple of the conductor.
  CycloNum promote(int m) const;
  // Rewrites in the smallest conductor dividing the current one that holds the value.
  CycloNum demote_if_rational() const;

  CycloNum inverse() const;
  CycloNum pow(long e) const;
  // Image under zeta -> zeta^-1 (complex conjugation for the standard embedding).
  CycloNum conj() const;
  // Image under zeta -> zeta^s for s coprime to the conductor.
  CycloNum galois(long s) const;

  std::complex<double> to_complex() const;

  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(const CycloNum& o);
  CycloNum& operator/=(const CycloNum& o);
  CycloNum& operator*=(const Rational& q);

  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(CycloNum a, const CycloNum& b) { return a *= b; }
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
  friend CycloNum operator*(CycloNum a, const Rational& q) { return a *= q; }
  friend CycloNum operator*(const Rational& q, CycloNum a) { return a *= q; }
  friend CycloNum operator*(CycloNum a, long v) { return a *= Rational(v); }
  friend CycloNum operator*(long v, CycloNum a) { return a *= Rational(v); }
  CycloNum operator-() const;

  friend bool operator==(const CycloNum& a, const CycloNum& b);
  friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

  std::string str() const;

 private:
  const detail::CycloTables* t_;
  std::vector<Rational> c_;

  CycloNum(const detail::CycloTables* t, std::vector<Rational> c);
  static int common_conductor(const CycloNum& a, const CycloNum& b);
};

std::ostream& operator<<(std::ostream& os, const CycloNum& a);

// Free-function spellings of the field operations.
inline CycloNum make_root_of_unity(int k, long j) { return CycloNum::root_of_unity(k, j); }
inline CycloNum cyclo_mul(const CycloNum& a, const CycloNum& b) { return a * b; }
inline CycloNum cyclo_add(const CycloNum& a, const CycloNum& b) { return a + b; }
inline CycloNum cyclo_inv(const CycloNum& a) { return a.inverse(); }
inline bool cyclo_is_zero(const CycloNum& a) { return a.is_zero(); }
inline std::complex<double> embed_to_complex(const CycloNum& a) { return a.to_complex(); }

long lcm_conductor(long a, long b);

}  // namespace kfold
