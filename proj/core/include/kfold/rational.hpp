#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kfold {

// GMP keeps mpq_class canonical after every arithmetic operation, so the
// lowest-terms / positive-denominator invariant holds without extra work.
using Rational = mpq_class;

// p/q in lowest terms. mpq_class(p, q) itself does not reduce.
inline Rational make_rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

// Parses "p", "p/q", or a plain decimal such as "-0.125" or "1e-3".
Rational parse_rational(std::string_view text);

// Serializes as "p" when the denominator is 1, else "p/q".
std::string to_string(const Rational& q);

double to_double(const Rational& q);

// Best rational approximation of x by continued fractions, stopping as soon
// as |x - p/q| <= tol. Values with |x| <= tol snap to zero.
Rational snap_rational(double x, double tol = 1e-12);

}  // namespace kfold
