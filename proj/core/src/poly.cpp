#include "kfold/poly.hpp"

#include <numeric>
#include <sstream>

namespace kfold {

CycloPoly poly_compose_scale_y(const CycloPoly& f, const CycloNum& c) {
  CycloPoly out;
  std::vector<CycloNum> powers{CycloNum::one(c.conductor())};
  for (const auto& [m, a] : f.terms()) {
    while (static_cast<int>(powers.size()) <= m.j) powers.push_back(powers.back() * c);
    out.add_term(m.i, m.j, a * powers[m.j]);
  }
  return out;
}

CycloPoly poly_compose_scale_y(const RatPoly& f, const CycloNum& c) {
  return poly_compose_scale_y(promote(f, c.conductor()), c);
}

CycloPoly promote(const RatPoly& f, int k) {
  CycloPoly out;
  for (const auto& [m, a] : f.terms()) out.add_term(m.i, m.j, CycloNum(k, a));
  return out;
}

CycloPoly promote(const CycloPoly& f, int k) {
  CycloPoly out;
  for (const auto& [m, a] : f.terms()) {
    if (k % a.conductor() != 0 && a.is_rational())
      out.add_term(m.i, m.j, CycloNum(k, a.rational_part()));
    else
      out.add_term(m.i, m.j, a.promote(k));
  }
  return out;
}

ComplexPoly to_complex(const CycloPoly& f) {
  ComplexPoly out;
  for (const auto& [m, a] : f.terms()) out.add_term(m.i, m.j, a.to_complex());
  return out;
}

ComplexPoly to_complex(const RatPoly& f) {
  ComplexPoly out;
  for (const auto& [m, a] : f.terms()) out.add_term(m.i, m.j, {a.get_d(), 0.0});
  return out;
}

int poly_conductor(const CycloPoly& f) {
  long k = 1;
  for (const auto& [m, a] : f.terms())
    if (!a.is_rational()) k = std::lcm(k, static_cast<long>(a.conductor()));
  return static_cast<int>(k);
}

namespace {

template <class C, class Fmt>
std::string format_poly(const BivarPoly<C>& f, Fmt fmt) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, a] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    std::string c = fmt(a);
    bool unit = c == "1";
    bool paren = c.find_first_of("+ ") != std::string::npos || (c.size() > 1 && c.find('-', 1) != std::string::npos);
    if (m.i == 0 && m.j == 0) {
      os << (paren ? "(" + c + ")" : c);
      continue;
    }
    if (!unit) os << (paren ? "(" + c + ")" : c) << "*";
    bool need_star = false;
    if (m.i > 0) {
      os << "x";
      if (m.i > 1) os << "^" << m.i;
      need_star = true;
    }
    if (m.j > 0) {
      if (need_star) os << "*";
      os << "y";
      if (m.j > 1) os << "^" << m.j;
    }
  }
  return os.str();
}

}  // namespace

std::string to_string(const RatPoly& f) {
  return format_poly(f, [](const Rational& q) { return to_string(q); });
}

std::string to_string(const CycloPoly& f) {
  return format_poly(f, [](const CycloNum& c) { return c.str(); });
}

}  // namespace kfold
