#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kfold/localalg.hpp"
#include "kfold/poly.hpp"

namespace kfold {

// Taylor jet of f for the k-folding germ (x, y) -> (x, y^k, f(x, y)).
// Coefficients may live in any cyclotomic field; computations run in
// Q(zeta_m) with m = lcm(k, conductor of the coefficients).
class JetGerm {
 public:
  static constexpr int kDefaultDegree = 11;

  JetGerm() = default;
  JetGerm(int k, const RatPoly& f, int degree = kDefaultDegree);
  JetGerm(int k, const CycloPoly& f, int degree = kDefaultDegree);

  int k() const { return k_; }
  int degree() const { return degree_; }
  const CycloPoly& f() const { return f_; }
  int field() const { return m_; }

  // a_{qs}: coefficient of x^(q-s) y^s, promoted to the working field.
  CycloNum a(int q, int s) const;
  // xi^e with xi = exp(2 pi i / k), in the working field.
  CycloNum xi_pow(long e) const;

 private:
  int k_ = 2;
  int degree_ = kDefaultDegree;
  int m_ = 2;
  CycloPoly f_;
};

// 1 + xi^j + ... + xi^((s-1) j) in Q(zeta_k).
CycloNum vartheta(int s, int j, int k);

// lambda_j computed as the divided difference; the Taylor-expansion form
// is computed as well and a mismatch throws std::logic_error.
CycloPoly lambda_branch(const JetGerm& germ, int j);
CycloPoly lambda_branch_divided(const JetGerm& germ, int j);
CycloPoly lambda_branch_series(const JetGerm& germ, int j);

// (lambda_j - lambda_j') / y.
CycloPoly lambda_pair_diff(const JetGerm& germ, int j, int jp);

// dim O_2 / <y^(k-1), f_y>; Infinite when f_y = 0 or the ideal is not of finite colength.
LocalDim crosscap_count(const JetGerm& germ, const QuotientOptions& opts = {});

struct BranchReport {
  int j = 0;
  CycloPoly lambda;
  CurveSingType sing_type;
  LocalDim mu;
  std::optional<int> r;
};

struct PairContact {
  int j = 0;
  int jp = 0;
  LocalDim contact;  // D_j . D_j'
  LocalDim t_pair;   // T_{j,j'}
};

PairContact pair_data(const JetGerm& germ, int j, int jp, const QuotientOptions& opts = {});

struct InvariantSet {
  LocalDim C;
  std::optional<int> T;       // nullopt unless finitely determined
  LocalDim muD;               // Infinite unless finitely determined
  bool mu_applicable = true;  // false for immersions (empty double point curve)
  std::optional<int> rD;      // nullopt when some branch count is unavailable
  bool finitely_determined = false;
};

struct InvariantOptions {
  QuotientOptions quotient;
  int workers = 1;            // per-branch / per-pair fan-out
  bool direct_mu = true;      // also compute milnor_number(prod lambda_j)
};

struct InvariantReport {
  InvariantSet inv;
  std::vector<BranchReport> branches;  // j = 1..k-1
  std::vector<PairContact> pairs;      // j < j', lexicographic
  LocalDim mu_aggregate;               // from branch Milnor numbers and contacts
  std::optional<LocalDim> mu_direct;   // Milnor number of the product
  bool mu_consistent = true;
  bool immersion = false;
  int t_sum = 0;
  bool t_integral = true;
  std::vector<std::string> warnings;

  const PairContact& pair(int j, int jp) const;
};

InvariantReport invariant_set(const JetGerm& germ, const InvariantOptions& opts = {});

// Runs fn(0..n-1) on up to `workers` threads; results must be written to
// caller-owned slots indexed by i. Exceptions are rethrown (lowest index first).
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace kfold
