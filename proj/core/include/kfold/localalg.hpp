#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kfold/poly.hpp"

namespace kfold {

// dim of O_2 / I at the origin, or Infinite.
class LocalDim {
 public:
  LocalDim() = default;
  static LocalDim finite(int v, bool exact = true) { return LocalDim(false, v, exact); }
  static LocalDim infinite(bool exact = true) { return LocalDim(true, 0, exact); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  int value() const;
  // False when the value came from the modular backend only (an upper bound
  // that is exact for all but finitely many primes).
  bool exact() const { return exact_; }
  std::string str() const;

  friend bool operator==(const LocalDim& a, const LocalDim& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend bool operator!=(const LocalDim& a, const LocalDim& b) { return !(a == b); }

 private:
  LocalDim(bool inf, int v, bool exact) : infinite_(inf), value_(v), exact_(exact) {}
  bool infinite_ = false;
  int value_ = 0;
  bool exact_ = true;
};

std::ostream& operator<<(std::ostream& os, const LocalDim& d);

enum class ElimBackend {
  Auto,     // word-size primes first, exact rerun when the system is small
  Exact,    // elimination over Q(zeta) only
  Modular,  // two word-size primes, minimum taken
};

struct QuotientOptions {
  int max_order = 64;
  ElimBackend backend = ElimBackend::Auto;
  // Auto mode reruns exactly when the final Macaulay system has at most this many columns.
  int exact_column_limit = 210;
  std::ostream* trace = nullptr;
};

struct QuotientReport {
  LocalDim dim;
  std::vector<int> staircase;  // staircase[N-1] = d_N
  int stable_order = 0;        // first N with d_N = d_{N+1} = d_{N+2}; 0 if none
  bool exact = true;
  std::string note;
};

QuotientReport quotient_dim_report(const std::vector<CycloPoly>& generators, const QuotientOptions& opts = {});
LocalDim quotient_dim(const std::vector<CycloPoly>& generators, const QuotientOptions& opts = {});
LocalDim quotient_dim(const std::vector<RatPoly>& generators, const QuotientOptions& opts = {});

LocalDim milnor_number(const CycloPoly& g, const QuotientOptions& opts = {});
LocalDim milnor_number(const RatPoly& g, const QuotientOptions& opts = {});

LocalDim intersection_multiplicity(const CycloPoly& g, const CycloPoly& h, const QuotientOptions& opts = {});
LocalDim intersection_multiplicity(const RatPoly& g, const RatPoly& h, const QuotientOptions& opts = {});

// ord_t h(alpha(t)) where alpha parametrizes the regular curve g = 0.
// nullopt when h(alpha(t)) vanishes through order order_cap.
// Throws std::invalid_argument when g is singular at the origin.
std::optional<int> parametrized_contact(const CycloPoly& g_regular, const CycloPoly& h, int order_cap);
std::optional<int> parametrized_contact(const RatPoly& g_regular, const RatPoly& h, int order_cap);

struct CurveSingType {
  enum class Kind { Regular, A, D4, Unsupported };
  Kind kind = Kind::Unsupported;
  int n = 0;                         // index for A(n)
  std::optional<int> branch_count;  // nullopt: branch count unavailable
  LocalDim mu;

  std::string label() const;
};

CurveSingType classify_curve_germ(const CycloPoly& g, const QuotientOptions& opts = {});
CurveSingType classify_curve_germ(const RatPoly& g, const QuotientOptions& opts = {});

// Number of local branches at the origin by Newton-polygon iteration over
// complex floating point. nullopt when the recursion exceeds depth_cap or a
// root cluster cannot be separated cleanly.
std::optional<int> newton_branch_count(const CycloPoly& g, int depth_cap = 8);

}  // namespace kfold
