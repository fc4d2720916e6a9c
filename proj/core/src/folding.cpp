#include "kfold/folding.hpp"

#include <atomic>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace kfold {

JetGerm::JetGerm(int k, const RatPoly& f, int degree) : JetGerm(k, promote(f, 1), degree) {}

JetGerm::JetGerm(int k, const CycloPoly& f, int degree) : k_(k), degree_(degree) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (degree < 2) throw std::invalid_argument("jet degree must be at least 2");
  if (!f.coeff(0, 0).is_zero()) throw std::invalid_argument("f must vanish at the origin");
  CycloPoly t = truncate_jet(f, degree);
  m_ = static_cast<int>(std::lcm(static_cast<long>(k), static_cast<long>(poly_conductor(t))));
  f_ = promote(t, m_);
}

CycloNum JetGerm::a(int q, int s) const {
  if (s < 0 || s > q) throw std::out_of_range("coefficient index out of range");
  if (q > degree_) throw std::out_of_range("coefficient a(" + std::to_string(q) + "," + std::to_string(s) +
                                           ") is beyond the jet degree");
  CycloNum c = f_.coeff(q - s, s);
  return c.is_zero() ? CycloNum::zero(m_) : c;
}

CycloNum JetGerm::xi_pow(long e) const { return CycloNum::root_of_unity(m_, (m_ / k_) * (((e % k_) + k_) % k_)); }

CycloNum vartheta(int s, int j, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (j % k == 0) throw std::invalid_argument("vartheta: j must not be divisible by k");
  if (s < 0) throw std::invalid_argument("vartheta: s must be non-negative");
  CycloNum acc = CycloNum::zero(k);
  for (int t = 0; t < s; ++t) acc += CycloNum::root_of_unity(k, static_cast<long>(t) * j);
  return acc;
}

namespace {

void check_branch_index(const JetGerm& g, int j) {
  if (j < 1 || j > g.k() - 1) throw std::invalid_argument("branch index out of range 1..k-1");
}

}  // namespace

CycloPoly lambda_branch_divided(const JetGerm& germ, int j) {
  check_branch_index(germ, j);
  const CycloNum xj = germ.xi_pow(j);
  CycloPoly diff = germ.f() - poly_compose_scale_y(germ.f(), xj);
  CycloPoly out = exact_divide_by_y(diff);
  out.scale((CycloNum::one(germ.field()) - xj).inverse());
  return out;
}

CycloPoly lambda_branch_series(const JetGerm& germ, int j) {
  check_branch_index(germ, j);
  CycloPoly out;
  std::vector<CycloNum> theta{CycloNum::zero(germ.field())};
  for (const auto& [m, c] : germ.f().terms()) {
    if (m.j == 0) continue;
    while (static_cast<int>(theta.size()) <= m.j) {
      const long s = static_cast<long>(theta.size());
      theta.push_back(theta.back() + germ.xi_pow((s - 1) * j));
    }
    out.add_term(m.i, m.j - 1, theta[m.j] * c);
  }
  return out;
}

CycloPoly lambda_branch(const JetGerm& germ, int j) {
  CycloPoly a = lambda_branch_divided(germ, j);
  if (a != lambda_branch_series(germ, j))
    throw std::logic_error("lambda_" + std::to_string(j) + ": divided difference and expansion disagree");
  return a;
}

CycloPoly lambda_pair_diff(const JetGerm& germ, int j, int jp) {
  if (j == jp) throw std::invalid_argument("lambda_pair_diff needs distinct indices");
  CycloPoly d = lambda_branch(germ, j) - lambda_branch(germ, jp);
  try {
    return exact_divide_by_y(d);
  } catch (const std::domain_error&) {
    throw std::logic_error("lambda_j - lambda_j' is not divisible by y");
  }
}

LocalDim crosscap_count(const JetGerm& germ, const QuotientOptions& opts) {
  CycloPoly fy = partial_derivative(germ.f(), Var::Y);
  if (fy.is_zero()) return LocalDim::infinite();
  CycloPoly yk = CycloPoly::monomial(0, germ.k() - 1, CycloNum::one(germ.field()));
  return quotient_dim({yk, fy}, opts);
}

PairContact pair_data(const JetGerm& germ, int j, int jp, const QuotientOptions& opts) {
  if (j >= jp) throw std::invalid_argument("pair_data needs j < j'");
  PairContact pc;
  pc.j = j;
  pc.jp = jp;
  const CycloPoly lj = lambda_branch(germ, j);
  const CycloPoly ljp = lambda_branch(germ, jp);
  pc.contact = intersection_multiplicity(lj, ljp, opts);
  CycloPoly d = exact_divide_by_y(lj - ljp);
  if (lj.is_zero() || d.is_zero())
    pc.t_pair = LocalDim::infinite();
  else
    pc.t_pair = quotient_dim({lj, d}, opts);
  return pc;
}

const PairContact& InvariantReport::pair(int j, int jp) const {
  if (j > jp) std::swap(j, jp);
  for (const auto& p : pairs)
    if (p.j == j && p.jp == jp) return p;
  throw std::out_of_range("no such branch pair");
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  std::vector<std::exception_ptr> errors(n);
  if (workers <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<int> next{0};
    auto work = [&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    const int t = std::min(workers, n);
    for (int w = 0; w < t; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

InvariantReport invariant_set(const JetGerm& germ, const InvariantOptions& opts) {
  const int k = germ.k();
  const int nb = k - 1;
  InvariantReport rep;
  if (germ.degree() < JetGerm::kDefaultDegree)
    rep.warnings.push_back("jet degree " + std::to_string(germ.degree()) + " is below 11; invariants are jet-dependent");

  rep.branches.resize(nb);
  for (int j = 1; j <= nb; ++j) {
    rep.branches[j - 1].j = j;
    rep.branches[j - 1].lambda = lambda_branch(germ, j);
  }
  rep.inv.C = crosscap_count(germ, opts.quotient);

  rep.immersion = !germ.a(1, 1).is_zero();
  if (rep.immersion) {
    for (auto& b : rep.branches) {
      b.mu = LocalDim::finite(0);
      b.r = 0;
      b.sing_type.branch_count = 0;
    }
    for (int j = 1; j <= nb; ++j)
      for (int jp = j + 1; jp <= nb; ++jp) rep.pairs.push_back({j, jp, LocalDim::finite(0), LocalDim::finite(0)});
    rep.inv.T = 0;
    rep.inv.mu_applicable = false;
    rep.inv.muD = LocalDim::finite(0);
    rep.inv.rD = 0;
    rep.inv.finitely_determined = true;
    rep.mu_aggregate = LocalDim::finite(0);
    // Every lambda_j is a unit, so the product has no zero at the origin.
    if (opts.direct_mu) rep.mu_direct = LocalDim::finite(0);
    return rep;
  }

  parallel_for(nb, opts.workers, [&](int i) {
    BranchReport& b = rep.branches[i];
    if (b.lambda.is_zero()) {
      b.mu = LocalDim::infinite();
      return;
    }
    b.sing_type = classify_curve_germ(b.lambda, opts.quotient);
    b.mu = b.sing_type.mu;
    b.r = b.sing_type.branch_count;
  });

  for (int j = 1; j <= nb; ++j)
    for (int jp = j + 1; jp <= nb; ++jp) rep.pairs.push_back({j, jp, LocalDim(), LocalDim()});
  parallel_for(static_cast<int>(rep.pairs.size()), opts.workers, [&](int i) {
    PairContact& pc = rep.pairs[i];
    const CycloPoly& lj = rep.branches[pc.j - 1].lambda;
    const CycloPoly& ljp = rep.branches[pc.jp - 1].lambda;
    pc.contact = intersection_multiplicity(lj, ljp, opts.quotient);
    CycloPoly d = exact_divide_by_y(lj - ljp);
    pc.t_pair = (lj.is_zero() || d.is_zero()) ? LocalDim::infinite() : quotient_dim({lj, d}, opts.quotient);
  });

  bool fd = true;
  long mu_sum = 0, contact_sum = 0;
  for (const auto& b : rep.branches) {
    if (b.mu.is_infinite())
      fd = false;
    else
      mu_sum += b.mu.value();
  }
  for (const auto& p : rep.pairs) {
    if (p.contact.is_infinite())
      fd = false;
    else
      contact_sum += p.contact.value();
  }
  rep.inv.finitely_determined = fd;
  rep.mu_aggregate = fd ? LocalDim::finite(static_cast<int>(mu_sum + 2 * contact_sum - k + 2)) : LocalDim::infinite();

  if (opts.direct_mu) {
    bool zero = false;
    for (const auto& b : rep.branches) zero = zero || b.lambda.is_zero();
    QuotientOptions q = opts.quotient;
    // Large products (k = 10, mu near 300) stabilize past the default cap;
    // one rerun at twice the cap when the aggregate is finite.
    for (int attempt = 0; attempt < 2; ++attempt) {
      if (zero) {
        rep.mu_direct = LocalDim::infinite();
        break;
      }
      CycloPoly prod = CycloPoly::constant(CycloNum::one(germ.field()));
      for (const auto& b : rep.branches) prod = CycloPoly::mul_truncated(prod, b.lambda, q.max_order + 2);
      rep.mu_direct = milnor_number(prod, q);
      if (rep.mu_direct->is_finite() || !fd) break;
      q.max_order *= 2;
    }
    rep.mu_consistent = *rep.mu_direct == rep.mu_aggregate;
    if (!rep.mu_consistent)
      rep.warnings.push_back("mu(D) routes disagree: aggregate " + rep.mu_aggregate.str() + ", direct " +
                             rep.mu_direct->str());
  }

  rep.inv.muD = rep.mu_aggregate;
  if (fd) {
    bool t_finite = true;
    for (const auto& p : rep.pairs) {
      if (p.t_pair.is_infinite())
        t_finite = false;
      else
        rep.t_sum += p.t_pair.value();
    }
    rep.t_integral = t_finite && rep.t_sum % 3 == 0;
    if (rep.t_integral)
      rep.inv.T = rep.t_sum / 3;
    else
      rep.warnings.push_back("sum of T_{j,j'} = " + std::to_string(rep.t_sum) + " is not divisible by 3");
    int r = 0;
    bool r_ok = true;
    for (const auto& b : rep.branches) {
      if (!b.r) {
        r_ok = false;
        break;
      }
      r += *b.r;
    }
    if (r_ok) rep.inv.rD = r;
  }
  return rep;
}

}  // namespace kfold
