#include "kfold/localalg.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "modp.hpp"

namespace kfold {

int LocalDim::value() const {
  if (infinite_) throw std::logic_error("value() on an infinite LocalDim");
  return value_;
}

std::string LocalDim::str() const { return infinite_ ? "Infinite" : std::to_string(value_); }

std::ostream& operator<<(std::ostream& os, const LocalDim& d) { return os << d.str(); }

namespace {

// Monomials of degree < N, ordered by degree then descending power of x.
inline int col_index(int i, int j) {
  const int d = i + j;
  return d * (d + 1) / 2 + j;
}
inline int cols_below(int n) { return n * (n + 1) / 2; }
inline int degree_of_col(int c) {
  int d = 0;
  while (cols_below(d + 1) <= c) ++d;
  return d;
}

struct RowSpec {
  int lead;
  int gen;
  int a;
  int b;
  bool operator<(const RowSpec& o) const { return std::tie(lead, gen, a, b) < std::tie(o.lead, o.gen, o.a, o.b); }
};

std::vector<RowSpec> row_specs(const std::vector<CycloPoly>& gens, int nbig) {
  std::vector<RowSpec> specs;
  for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
    const Monomial lead = gens[g].terms().begin()->first;
    for (int s = 0; s + lead.degree() < nbig; ++s)
      for (int b = 0; b <= s; ++b) {
        const int a = s - b;
        specs.push_back({col_index(lead.i + a, lead.j + b), g, a, b});
      }
  }
  std::sort(specs.begin(), specs.end());
  return specs;
}

// Pivot counts per degree (size nbig) over F_p; nullopt if a coefficient
// has no image in this field.
std::optional<std::vector<int>> modular_pivots(const std::vector<CycloPoly>& gens, int nbig,
                                               const modp::PrimeField& f) {
  struct Term {
    int i, j;
    uint64_t v;
  };
  std::vector<std::vector<Term>> red(gens.size());
  for (size_t g = 0; g < gens.size(); ++g) {
    for (const auto& [m, c] : gens[g].terms()) {
      if (m.degree() >= nbig) break;
      auto v = modp::reduce(c, f);
      if (!v) return std::nullopt;
      if (*v != 0) red[g].push_back({m.i, m.j, *v});
    }
  }
  const int ncols = cols_below(nbig);
  const uint64_t p = f.p;
  std::vector<std::vector<uint32_t>> piv(ncols);
  std::vector<uint64_t> row(ncols);
  std::vector<int> counts(nbig, 0);
  for (const RowSpec& rs : row_specs(gens, nbig)) {
    std::fill(row.begin() + rs.lead, row.end(), 0);
    for (const Term& t : red[rs.gen]) {
      const int d = t.i + t.j + rs.a + rs.b;
      if (d >= nbig) continue;
      row[col_index(t.i + rs.a, t.j + rs.b)] = t.v;
    }
    for (int c = rs.lead; c < ncols; ++c) {
      const uint64_t v = row[c];
      if (v == 0) continue;
      auto& pr = piv[c];
      if (!pr.empty()) {
        const uint64_t neg = p - v;
        const uint32_t* src = pr.data();
        const int len = static_cast<int>(pr.size());
        for (int t = 0; t < len; ++t)
          if (src[t]) row[c + t] = (row[c + t] + neg * src[t]) % p;
        continue;
      }
      const uint64_t inv = f.inv(v);
      pr.resize(ncols - c);
      for (int t = c; t < ncols; ++t) pr[t - c] = static_cast<uint32_t>(f.mul(row[t], inv));
      ++counts[degree_of_col(c)];
      break;
    }
  }
  return counts;
}

using SparseRow = std::vector<std::pair<int, CycloNum>>;

std::vector<int> exact_pivots(const std::vector<CycloPoly>& gens, int nbig) {
  const int ncols = cols_below(nbig);
  std::vector<SparseRow> piv(ncols);
  std::vector<int> counts(nbig, 0);
  for (const RowSpec& rs : row_specs(gens, nbig)) {
    SparseRow row;
    for (const auto& [m, c] : gens[rs.gen].terms()) {
      if (m.degree() + rs.a + rs.b >= nbig) break;
      row.emplace_back(col_index(m.i + rs.a, m.j + rs.b), c);
    }
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    while (!row.empty()) {
      const int c = row.front().first;
      const SparseRow& pr = piv[c];
      if (pr.empty()) {
        const CycloNum inv = row.front().second.inverse();
        for (auto& e : row) e.second *= inv;
        piv[c] = std::move(row);
        ++counts[degree_of_col(c)];
        break;
      }
      const CycloNum factor = row.front().second;
      SparseRow next;
      next.reserve(row.size() + pr.size());
      size_t ia = 1, ib = 1;  // leading entries cancel
      while (ia < row.size() || ib < pr.size()) {
        if (ib == pr.size() || (ia < row.size() && row[ia].first < pr[ib].first)) {
          next.push_back(std::move(row[ia++]));
        } else if (ia == row.size() || pr[ib].first < row[ia].first) {
          next.emplace_back(pr[ib].first, -(factor * pr[ib].second));
          ++ib;
        } else {
          CycloNum v = row[ia].second - factor * pr[ib].second;
          if (!v.is_zero()) next.emplace_back(row[ia].first, std::move(v));
          ++ia;
          ++ib;
        }
      }
      row = std::move(next);
    }
  }
  return counts;
}

struct RunResult {
  bool stable = false;
  std::vector<int> staircase;
  int stable_order = 0;
  int value = 0;
  bool field_failure = false;
};

template <class Elim>
RunResult run_schedule(int start, int max_order, Elim elim) {
  RunResult res;
  int nbig = std::min(max_order, std::max(start, 3));
  while (true) {
    std::optional<std::vector<int>> counts = elim(nbig);
    if (!counts) {
      res.field_failure = true;
      return res;
    }
    res.staircase.assign(nbig, 0);
    int pivots = 0;
    for (int n = 1; n <= nbig; ++n) {
      pivots += (*counts)[n - 1];
      res.staircase[n - 1] = cols_below(n) - pivots;
    }
    for (int n = 1; n + 2 <= nbig; ++n) {
      const int d = res.staircase[n - 1];
      if (res.staircase[n] == d && res.staircase[n + 1] == d) {
        res.stable = true;
        res.stable_order = n;
        res.value = d;
        return res;
      }
    }
    if (nbig >= max_order) return res;
    nbig = std::min(max_order, nbig + std::max(6, nbig / 2));
  }
}

void dump_trace(std::ostream* os, const char* backend, const RunResult& r) {
  if (!os) return;
  *os << "macaulay[" << backend << "]";
  for (size_t n = 0; n < r.staircase.size(); ++n) *os << ' ' << (n + 1) << ':' << r.staircase[n];
  if (r.stable)
    *os << " stable@" << r.stable_order << '=' << r.value;
  else
    *os << " cap";
  *os << '\n';
}

int initial_order(const std::vector<CycloPoly>& gens) {
  int lo = INT_MAX;
  for (const auto& g : gens) lo = std::min(lo, g.order());
  return std::max(8, 3 * lo + 4);
}

RunResult run_modular(const std::vector<CycloPoly>& gens, int m, int start, const QuotientOptions& opts,
                      int& prime_index) {
  for (; prime_index < 16; ++prime_index) {
    const modp::PrimeField f = modp::field_for(m, prime_index);
    RunResult r = run_schedule(start, opts.max_order,
                               [&](int nbig) { return modular_pivots(gens, nbig, f); });
    if (!r.field_failure) {
      dump_trace(opts.trace, "mod p", r);
      ++prime_index;
      return r;
    }
  }
  throw std::runtime_error("no usable prime for modular elimination");
}

}  // namespace

QuotientReport quotient_dim_report(const std::vector<CycloPoly>& generators, const QuotientOptions& opts) {
  if (generators.empty()) throw std::invalid_argument("quotient_dim needs at least one generator");
  std::vector<CycloPoly> gens;
  for (const auto& g : generators)
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty()) throw std::invalid_argument("quotient_dim: all generators are zero");

  QuotientReport rep;
  for (const auto& g : gens)
    if (g.order() == 0) {
      rep.dim = LocalDim::finite(0);
      rep.note = "unit generator";
      return rep;
    }
  if (gens.size() == 1) {
    rep.dim = LocalDim::infinite();
    rep.note = "principal ideal of a non-unit";
    return rep;
  }
  if (std::all_of(gens.begin(), gens.end(), [](const CycloPoly& g) { return divisible_by_x<CycloNum>(g); })) {
    rep.dim = LocalDim::infinite();
    rep.note = "common factor x";
    return rep;
  }
  if (std::all_of(gens.begin(), gens.end(), [](const CycloPoly& g) { return divisible_by_y<CycloNum>(g); })) {
    rep.dim = LocalDim::infinite();
    rep.note = "common factor y";
    return rep;
  }

  long m = 1;
  for (const auto& g : gens) m = std::lcm(m, static_cast<long>(poly_conductor(g)));
  for (auto& g : gens) g = promote(g, static_cast<int>(m));

  const int start = initial_order(gens);
  auto finish_exact = [&](int from) {
    RunResult r = run_schedule(from, opts.max_order, [&](int nbig) {
      return std::optional<std::vector<int>>(exact_pivots(gens, nbig));
    });
    dump_trace(opts.trace, "exact", r);
    rep.staircase = r.staircase;
    rep.stable_order = r.stable_order;
    rep.exact = true;
    rep.dim = r.stable ? LocalDim::finite(r.value) : LocalDim::infinite();
    if (!r.stable) rep.note = "cap reached";
    return rep;
  };

  if (opts.backend == ElimBackend::Exact) return finish_exact(start);

  int prime_index = 0;
  RunResult first = run_modular(gens, static_cast<int>(m), start, opts, prime_index);
  if (opts.backend == ElimBackend::Auto && first.stable &&
      cols_below(first.stable_order + 2) <= opts.exact_column_limit)
    return finish_exact(first.stable_order + 2);

  RunResult second = run_modular(gens, static_cast<int>(m), start, opts, prime_index);
  const RunResult* best = nullptr;
  if (first.stable && second.stable)
    best = first.value <= second.value ? &first : &second;
  else if (first.stable)
    best = &first;
  else if (second.stable)
    best = &second;
  rep.exact = false;
  if (best) {
    rep.staircase = best->staircase;
    rep.stable_order = best->stable_order;
    rep.dim = LocalDim::finite(best->value, false);
  } else {
    rep.staircase = first.staircase;
    rep.dim = LocalDim::infinite(false);
    rep.note = "cap reached";
  }
  return rep;
}

LocalDim quotient_dim(const std::vector<CycloPoly>& generators, const QuotientOptions& opts) {
  return quotient_dim_report(generators, opts).dim;
}

LocalDim quotient_dim(const std::vector<RatPoly>& generators, const QuotientOptions& opts) {
  std::vector<CycloPoly> g;
  g.reserve(generators.size());
  for (const auto& p : generators) g.push_back(promote(p, 1));
  return quotient_dim(g, opts);
}

LocalDim milnor_number(const CycloPoly& g, const QuotientOptions& opts) {
  if (g.is_zero()) return LocalDim::infinite();
  if (g.order() == 0) throw std::invalid_argument("milnor_number needs g(0,0) = 0");
  CycloPoly gx = partial_derivative(g, Var::X);
  CycloPoly gy = partial_derivative(g, Var::Y);
  if (gx.is_zero() && gy.is_zero()) return LocalDim::infinite();
  if (gx.is_zero() || gy.is_zero()) {
    const CycloPoly& other = gx.is_zero() ? gy : gx;
    return other.order() == 0 ? LocalDim::finite(0) : LocalDim::infinite();
  }
  return quotient_dim({gx, gy}, opts);
}

LocalDim milnor_number(const RatPoly& g, const QuotientOptions& opts) { return milnor_number(promote(g, 1), opts); }

LocalDim intersection_multiplicity(const CycloPoly& g, const CycloPoly& h, const QuotientOptions& opts) {
  if (g.is_zero() || h.is_zero()) return LocalDim::infinite();
  return quotient_dim({g, h}, opts);
}

LocalDim intersection_multiplicity(const RatPoly& g, const RatPoly& h, const QuotientOptions& opts) {
  return intersection_multiplicity(promote(g, 1), promote(h, 1), opts);
}

namespace {

using Series = std::vector<CycloNum>;  // coefficients of t^0..t^n

Series series_mul(const Series& a, const Series& b, int n) {
  Series out(n + 1, CycloNum());
  for (int i = 0; i <= n && i < static_cast<int>(a.size()); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= n && j < static_cast<int>(b.size()); ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

// Evaluates p(t, s(t)) (if swap: p(s(t), t)) mod t^(n+1).
Series compose(const CycloPoly& p, const Series& s, bool swap, int n) {
  int maxpow = 0;
  for (const auto& [m, c] : p.terms()) maxpow = std::max(maxpow, swap ? m.i : m.j);
  std::vector<Series> powers{Series(n + 1, CycloNum())};
  powers[0][0] = CycloNum(1);
  for (int e = 1; e <= maxpow; ++e) powers.push_back(series_mul(powers.back(), s, n));
  Series out(n + 1, CycloNum());
  for (const auto& [m, c] : p.terms()) {
    const int tpow = swap ? m.j : m.i;
    const int spow = swap ? m.i : m.j;
    if (tpow > n) continue;
    const Series& sp = powers[spow];
    for (int d = 0; d + tpow <= n; ++d)
      if (!sp[d].is_zero()) out[d + tpow] += c * sp[d];
  }
  return out;
}

}  // namespace

std::optional<int> parametrized_contact(const CycloPoly& g, const CycloPoly& h, int order_cap) {
  if (order_cap < 1) throw std::invalid_argument("order_cap must be positive");
  if (g.order() == 0) throw std::invalid_argument("g must vanish at the origin");
  const CycloNum gx = g.coeff(1, 0);
  const CycloNum gy = g.coeff(0, 1);
  if (gx.is_zero() && gy.is_zero()) throw std::invalid_argument("g is singular at the origin");
  // Solve g(t, s) = 0 for s = s(t) (or g(s, t) = 0 when g_y(0) = 0).
  const bool swap = gy.is_zero();
  const CycloNum lin_s = swap ? gx : gy;
  const CycloNum lin_t = swap ? gy : gx;
  CycloPoly rest = g;
  rest.set_term(1, 0, CycloNum());
  rest.set_term(0, 1, CycloNum());
  const CycloNum inv = (-lin_s).inverse();
  const int n = order_cap;
  Series s(n + 1, CycloNum());
  for (int it = 0; it <= n; ++it) {
    Series r = compose(rest, s, swap, n);
    if (n >= 1) r[1] += lin_t;
    for (auto& v : r) v *= inv;
    s = std::move(r);
  }
  Series hv = compose(h, s, swap, n);
  for (int d = 0; d <= n; ++d)
    if (!hv[d].is_zero()) return d;
  return std::nullopt;
}

std::optional<int> parametrized_contact(const RatPoly& g, const RatPoly& h, int order_cap) {
  return parametrized_contact(promote(g, 1), promote(h, 1), order_cap);
}

}  // namespace kfold
