#pragma once

#include <initializer_list>
#include <tuple>

#include "kfold/poly.hpp"

namespace kfold::test {

// Integer-coefficient polynomial from (i, j, c) triples, c the coefficient of x^i y^j.
inline RatPoly P(std::initializer_list<std::tuple<int, int, long>> terms) {
  RatPoly p;
  for (const auto& [i, j, c] : terms) p.add_term(i, j, Rational(c));
  return p;
}

}  // namespace kfold::test
