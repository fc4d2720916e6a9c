#include "kfold/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace kfold {

namespace {

bool is_integer_literal(std::string_view s) {
  size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) throw std::invalid_argument("bad integer literal '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

// Exact decimal: [sign] digits [. digits] [e|E [sign] digits]
Rational parse_decimal(std::string_view s) {
  std::string text(s);
  size_t epos = text.find_first_of("eE");
  long exponent = 0;
  if (epos != std::string::npos) {
    std::string_view e = std::string_view(text).substr(epos + 1);
    if (!is_integer_literal(e)) throw std::invalid_argument("bad exponent in '" + text + "'");
    exponent = std::stol(std::string(e));
    text.resize(epos);
  }
  bool neg = false;
  size_t start = 0;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    neg = text[0] == '-';
    start = 1;
  }
  std::string digits;
  long frac_len = 0;
  bool seen_dot = false;
  for (size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal '" + std::string(s) + "'");
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_len;
    } else {
      throw std::invalid_argument("bad number '" + std::string(s) + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad number '" + std::string(s) + "'");
  mpz_class num(digits, 10);
  if (neg) num = -num;
  long shift = exponent - frac_len;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  Rational q = shift >= 0 ? Rational(num * pow10) : Rational(num, pow10);
  q.canonicalize();
  return q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    mpz_class p = parse_integer(text.substr(0, slash));
    mpz_class q = parse_integer(text.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
  }
  if (is_integer_literal(text)) return Rational(parse_integer(text));
  return parse_decimal(text);
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational snap_rational(double x, double tol) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot snap a non-finite value");
  if (std::fabs(x) <= tol) return Rational(0);
  // Convergents h/k of the continued fraction of x, computed in exact
  // integers so large partial quotients cannot overflow.
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  double rem = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    Rational approx(h, k);
    if (std::fabs(x - approx.get_d()) <= tol || rem == 0.0) break;
    double inv = 1.0 / rem;
    double a = std::floor(inv);
    rem = inv - a;
    mpz_class ai(a);
    mpz_class h_next = ai * h + h_prev;
    mpz_class k_next = ai * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  Rational r(h, k);
  r.canonicalize();
  return r;
}

}  // namespace kfold
