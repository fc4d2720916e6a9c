#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <stdexcept>

#include "kfold/localalg.hpp"

namespace kfold {

std::string CurveSingType::label() const {
  switch (kind) {
    case Kind::Regular:
      return "Regular";
    case Kind::A:
      return "A" + std::to_string(n);
    case Kind::D4:
      return "D4";
    case Kind::Unsupported:
      break;
  }
  return "Unsupported";
}

namespace {

using cd = std::complex<double>;
using CPoly = std::map<std::pair<int, int>, cd>;

void prune(CPoly& f) {
  double mx = 0;
  for (const auto& [m, c] : f) mx = std::max(mx, std::abs(c));
  for (auto it = f.begin(); it != f.end();) {
    if (std::abs(it->second) <= 1e-9 * mx)
      it = f.erase(it);
    else
      ++it;
  }
}

// Roots of sum c[e] u^e (c.back() != 0).
std::vector<cd> poly_roots(const std::vector<cd>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<cd> a(c.size());
  for (int e = 0; e <= n; ++e) a[e] = c[e] / c[n];
  if (n == 1) return {-a[0]};
  std::vector<cd> z(n);
  double radius = 0;
  for (int e = 0; e < n; ++e) radius = std::max(radius, std::pow(std::abs(a[e]), 1.0 / (n - e)));
  radius = std::max(radius, 1e-3);
  const cd seed(0.4, 0.9);
  for (int r = 0; r < n; ++r) z[r] = radius * std::pow(seed, r);
  auto eval = [&](cd x) {
    cd acc = 0;
    for (int e = n; e >= 0; --e) acc = acc * x + a[e];
    return acc;
  };
  for (int it = 0; it < 2000; ++it) {
    double delta = 0;
    for (int r = 0; r < n; ++r) {
      cd den = 1;
      for (int s = 0; s < n; ++s)
        if (s != r) den *= z[r] - z[s];
      if (den == 0.0) den = 1e-300;
      const cd step = eval(z[r]) / den;
      z[r] -= step;
      delta = std::max(delta, std::abs(step) / std::max(1.0, std::abs(z[r])));
    }
    if (delta < 1e-15) break;
  }
  return z;
}

struct Cluster {
  cd centre;
  int mult;
};

std::optional<std::vector<Cluster>> cluster_roots(const std::vector<cd>& roots) {
  const int n = static_cast<int>(roots.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto rel = [&](int a, int b) {
    return std::abs(roots[a] - roots[b]) / std::max({std::abs(roots[a]), std::abs(roots[b]), 1e-12});
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (rel(a, b) <= 1e-3) parent[find(a)] = find(b);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (find(a) != find(b) && rel(a, b) <= 1e-2) return std::nullopt;
  std::map<int, Cluster> groups;
  for (int a = 0; a < n; ++a) {
    auto& g = groups[find(a)];
    g.centre += roots[a];
    ++g.mult;
  }
  std::vector<Cluster> out;
  for (auto& [r, g] : groups) {
    g.centre /= static_cast<double>(g.mult);
    out.push_back(g);
  }
  return out;
}

std::optional<int> count_branches(CPoly f, int depth) {
  prune(f);
  if (f.empty()) return std::nullopt;
  if (f.count({0, 0})) return 0;
  if (depth < 0) return std::nullopt;
  int branches = 0;
  int min_i = INT_MAX, min_j = INT_MAX;
  for (const auto& [m, c] : f) {
    min_i = std::min(min_i, m.first);
    min_j = std::min(min_j, m.second);
  }
  // A repeated coordinate factor is a non-reduced component.
  if (min_i > 1 || min_j > 1) return std::nullopt;
  if (min_i == 1 || min_j == 1) {
    CPoly g;
    for (const auto& [m, c] : f) g[{m.first - min_i, m.second - min_j}] = c;
    branches += min_i + min_j;
    f = std::move(g);
    if (f.count({0, 0})) return branches;
  }
  // Lower convex hull between the pure-y and pure-x terms.
  std::map<int, int> lowest;  // i -> min j
  for (const auto& [m, c] : f) {
    auto it = lowest.find(m.first);
    if (it == lowest.end() || m.second < it->second) lowest[m.first] = m.second;
  }
  if (!lowest.count(0)) return std::nullopt;
  int x_end = INT_MAX;
  for (const auto& [i, j] : lowest)
    if (j == 0) x_end = std::min(x_end, i);
  if (x_end == INT_MAX) return std::nullopt;
  std::vector<std::pair<int, int>> hull;
  for (const auto& [i, j] : lowest) {
    if (i > x_end) break;
    while (hull.size() >= 2) {
      const auto& p1 = hull[hull.size() - 2];
      const auto& p2 = hull.back();
      const long cross = static_cast<long>(p2.first - p1.first) * (j - p1.second) -
                         static_cast<long>(p2.second - p1.second) * (i - p1.first);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.emplace_back(i, j);
  }
  for (size_t e = 0; e + 1 < hull.size(); ++e) {
    const auto [a1, b1] = hull[e];
    const auto [a2, b2] = hull[e + 1];
    const int g = std::gcd(a2 - a1, b1 - b2);
    const int p = (a2 - a1) / g;  // y ~ x^(p/q)
    const int q = (b1 - b2) / g;
    const long w = static_cast<long>(q) * a1 + static_cast<long>(p) * b1;
    // Edge polynomial in u = c^q.
    std::vector<cd> edge((b1 - b2) / q + 1);
    for (const auto& [m, c] : f)
      if (static_cast<long>(q) * m.first + static_cast<long>(p) * m.second == w) edge[(m.second - b2) / q] += c;
    auto clusters = cluster_roots(poly_roots(edge));
    if (!clusters) return std::nullopt;
    for (const Cluster& cl : *clusters) {
      if (cl.mult == 1) {
        ++branches;
        continue;
      }
      const cd d = std::pow(cl.centre, 1.0 / q);
      // F(x1^q, x1^p (d + y1)) / x1^w
      CPoly next;
      for (const auto& [m, c] : f) {
        const long ex = static_cast<long>(q) * m.first + static_cast<long>(p) * m.second - w;
        cd binom = 1;
        for (int s = 0; s <= m.second; ++s) {
          next[{static_cast<int>(ex), s}] += c * binom * std::pow(d, m.second - s);
          binom *= static_cast<double>(m.second - s) / (s + 1);
        }
      }
      for (int s = 0; s < cl.mult; ++s) next.erase({0, s});
      auto sub = count_branches(std::move(next), depth - 1);
      if (!sub) return std::nullopt;
      branches += *sub;
    }
  }
  return branches;
}

}  // namespace

std::optional<int> newton_branch_count(const CycloPoly& g, int depth_cap) {
  CPoly f;
  for (const auto& [m, c] : g.terms()) f[{m.i, m.j}] = c.to_complex();
  return count_branches(std::move(f), depth_cap);
}

CurveSingType classify_curve_germ(const CycloPoly& g, const QuotientOptions& opts) {
  if (g.is_zero()) throw std::invalid_argument("classify_curve_germ: zero germ");
  if (g.order() == 0) throw std::invalid_argument("classify_curve_germ: germ does not vanish at the origin");
  CurveSingType t;
  const int ord = g.order();
  if (ord == 1) {
    t.kind = CurveSingType::Kind::Regular;
    t.branch_count = 1;
    t.mu = LocalDim::finite(0);
    return t;
  }
  t.mu = milnor_number(g, opts);
  if (ord == 2 && t.mu.is_finite()) {
    t.kind = CurveSingType::Kind::A;
    t.n = t.mu.value();
    t.branch_count = t.n % 2 ? 2 : 1;
    return t;
  }
  if (ord == 3) {
    const CycloNum a = g.coeff(3, 0), b = g.coeff(2, 1), c = g.coeff(1, 2), d = g.coeff(0, 3);
    const CycloNum disc = b * b * c * c - 4L * a * c * c * c - 4L * b * b * b * d - 27L * a * a * d * d +
                          18L * a * b * c * d;
    if (!disc.is_zero()) {
      t.kind = CurveSingType::Kind::D4;
      t.n = 4;
      t.branch_count = 3;
      return t;
    }
  }
  t.kind = CurveSingType::Kind::Unsupported;
  if (t.mu.is_finite()) t.branch_count = newton_branch_count(g);
  return t;
}

CurveSingType classify_curve_germ(const RatPoly& g, const QuotientOptions& opts) {
  return classify_curve_germ(promote(g, 1), opts);
}

}  // namespace kfold
