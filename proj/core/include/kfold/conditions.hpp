#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kfold/folding.hpp"

namespace kfold {

using IndexPair = std::pair<int, int>;

// Number of root-of-unity indices a condition takes: 0, 1 (j) or 2 (j, j').
struct ConditionDef {
  std::string name;
  int arity = 0;
  std::string expr;
};

// The condition polynomials of the stratum tables, in a small expression
// language: aQS or a(Q,S) for coefficients, X = xi^j, Y = xi^j', {name}
// for another condition at the same indices, + - * / ^ and parentheses.
const std::vector<ConditionDef>& condition_table();
const ConditionDef& condition_def(const std::string& name);

struct ConditionValue {
  std::string name;
  std::optional<IndexPair> params;  // (j, 0) for single-index conditions
  CycloNum value;
  bool vanished = false;
  // Largest |a_qs| among the coefficients the expression reads.
  double scale = 0.0;
};

// Exact evaluation. Coefficient names ("a31", "a(10,10)") are accepted as
// conditions of arity 0. Throws std::invalid_argument for unknown names or
// missing indices, std::out_of_range for coefficients beyond the jet degree
// and std::domain_error on a zero denominator.
ConditionValue condition_value(const std::string& name, const JetGerm& germ,
                               std::optional<IndexPair> params = std::nullopt);

// Floating-point evaluation of an index-free condition; a(q, s) supplies the
// coefficients. Used on surface grids, where jets are not exact.
double condition_value_real(const std::string& name, const std::function<double(int, int)>& a);

}  // namespace kfold
