#include "kfold/surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kfold {

void SurfacePatch::validate() const {
  if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("surface domain is empty");
  if (nx < 8 || ny < 8) throw std::invalid_argument("surface grid must be at least 8x8");
}

bool SurfacePatch::contains(double x, double y) const {
  const double ex = 1e-12 * (x1 - x0), ey = 1e-12 * (y1 - y0);
  return x >= x0 - ex && x <= x1 + ex && y >= y0 - ey && y <= y1 + ey;
}

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(const Vec3& a) {
  const double n = std::sqrt(dot(a, a));
  return {a[0] / n, a[1] / n, a[2] / n};
}

// Dense bivariate series truncated at total degree N; index (i, j) -> x^i y^j.
class Series {
 public:
  explicit Series(int n) : n_(n), c_((n + 1) * (n + 2) / 2, 0.0) {}

  int order() const { return n_; }
  static int idx(int i, int j) {
    const int d = i + j;
    return d * (d + 1) / 2 + j;
  }
  double get(int i, int j) const { return i + j > n_ ? 0.0 : c_[idx(i, j)]; }
  double& at(int i, int j) { return c_[idx(i, j)]; }

  Series& operator+=(const Series& o) {
    for (size_t t = 0; t < c_.size(); ++t) c_[t] += o.c_[t];
    return *this;
  }
  Series scaled(double s) const {
    Series r = *this;
    for (double& v : r.c_) v *= s;
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    Series r(a.n_);
    for (int da = 0; da <= a.n_; ++da)
      for (int ja = 0; ja <= da; ++ja) {
        const double ca = a.c_[da * (da + 1) / 2 + ja];
        if (ca == 0.0) continue;
        for (int db = 0; da + db <= a.n_; ++db)
          for (int jb = 0; jb <= db; ++jb) {
            const double cb = b.c_[db * (db + 1) / 2 + jb];
            if (cb == 0.0) continue;
            r.c_[idx(da - ja + db - jb, ja + jb)] += ca * cb;
          }
      }
    return r;
  }

 private:
  int n_;
  std::vector<double> c_;
};

// Dense polynomial with coefficients p[i][j] of x^i y^j.
using Dense = std::vector<std::vector<double>>;

Dense translated(const RatPoly& f, double x0, double y0) {
  const int d = std::max(0, f.total_degree());
  Dense out(d + 1, std::vector<double>(d + 1, 0.0));
  std::vector<std::vector<double>> binom(d + 1, std::vector<double>(d + 1, 0.0));
  for (int n = 0; n <= d; ++n) {
    binom[n][0] = 1;
    for (int r = 1; r <= n; ++r) binom[n][r] = binom[n - 1][r - 1] + (r <= n - 1 ? binom[n - 1][r] : 0.0);
  }
  for (const auto& [m, c] : f.terms()) {
    const double cv = to_double(c);
    for (int a = 0; a <= m.i; ++a)
      for (int b = 0; b <= m.j; ++b)
        out[a][b] += cv * binom[m.i][a] * binom[m.j][b] * std::pow(x0, m.i - a) * std::pow(y0, m.j - b);
  }
  return out;
}

// g(u(X, Y), v(X, Y)) for g given densely (constant and linear parts ignored).
Series compose_nonlinear(const Dense& g, const Series& u, const Series& v) {
  const int N = u.order();
  const int d = static_cast<int>(g.size()) - 1;
  std::vector<Series> up{Series(N)}, vp{Series(N)};
  up[0].at(0, 0) = 1;
  vp[0].at(0, 0) = 1;
  for (int e = 1; e <= std::min(d, N); ++e) {
    up.push_back(up.back() * u);
    vp.push_back(vp.back() * v);
  }
  Series out(N);
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b) {
      if (a + b < 2 || a + b > N || g[a][b] == 0.0) continue;
      out += (up[a] * vp[b]).scaled(g[a][b]);
    }
  return out;
}

// Eigen-decomposition of [[p, q], [q, r]]: values ascending, angle of the first eigenvector.
void sym_eigen(double p, double q, double r, double& l1, double& l2, double& t1) {
  const double mean = 0.5 * (p + r);
  const double rad = std::hypot(0.5 * (p - r), q);
  l1 = mean - rad;
  l2 = mean + rad;
  // Eigenvector for l1: the direction minimizing the form.
  t1 = 0.5 * std::atan2(2 * q, p - r) + M_PI / 2;
  if (t1 > M_PI) t1 -= M_PI;
}

}  // namespace

Vec3 whitney_fold(const Vec3& p, double d, const Vec3& v, int k) {
  const double vv = dot(v, v);
  if (vv == 0.0) throw std::invalid_argument("whitney_fold: zero normal vector");
  const double lambda = (d - dot(p, v)) / vv;
  const double lk = std::pow(lambda, k);
  return {p[0] + (lambda + lk) * v[0], p[1] + (lambda + lk) * v[1], p[2] + (lambda + lk) * v[2]};
}

CVec3 whitney_fold(const CVec3& p, double d, const Vec3& v, int k) {
  const double vv = dot(v, v);
  if (vv == 0.0) throw std::invalid_argument("whitney_fold: zero normal vector");
  const std::complex<double> pv = p[0] * v[0] + p[1] * v[1] + p[2] * v[2];
  const std::complex<double> lambda = (d - pv) / vv;
  const std::complex<double> s = lambda + std::pow(lambda, k);
  return {p[0] + s * v[0], p[1] + s * v[1], p[2] + s * v[2]};
}

MongeData monge_at_point(const SurfacePatch& s, double x, double y, int degree, const SurfaceTolerances& tol) {
  if (!s.contains(x, y)) throw std::invalid_argument("monge_at_point: point outside the domain");
  if (degree < 2) throw std::invalid_argument("monge_at_point: degree must be at least 2");
  const Dense g = translated(s.f, x, y);
  auto gc = [&g](int a, int b) { return a < static_cast<int>(g.size()) && b < static_cast<int>(g.size()) ? g[a][b] : 0.0; };

  MongeData m;
  m.point = {x, y, gc(0, 0)};
  const double gu = gc(1, 0), gv = gc(0, 1);
  m.n = normalized({-gu, -gv, 1.0});
  m.e1 = normalized({1.0 - m.n[0] * m.n[0], -m.n[0] * m.n[1], -m.n[0] * m.n[2]});
  m.e2 = cross(m.n, m.e1);

  // (X, Y) = A (u, v) + (e1z, e2z) g2(u, v); invert by fixed-point iteration.
  const double A11 = m.e1[0] + m.e1[2] * gu, A12 = m.e1[1] + m.e1[2] * gv;
  const double A21 = m.e2[0] + m.e2[2] * gu, A22 = m.e2[1] + m.e2[2] * gv;
  const double det = A11 * A22 - A12 * A21;
  const double B11 = A22 / det, B12 = -A12 / det, B21 = -A21 / det, B22 = A11 / det;
  const int N = degree;
  Series X(N), Y(N);
  X.at(1, 0) = 1;
  Y.at(0, 1) = 1;
  Series u = X.scaled(B11);
  u += Y.scaled(B12);
  Series v = X.scaled(B21);
  v += Y.scaled(B22);
  for (int it = 1; it < N; ++it) {
    const Series g2 = compose_nonlinear(g, u, v);
    Series rx = X;
    rx += g2.scaled(-m.e1[2]);
    Series ry = Y;
    ry += g2.scaled(-m.e2[2]);
    u = rx.scaled(B11);
    u += ry.scaled(B12);
    v = rx.scaled(B21);
    v += ry.scaled(B22);
  }
  Series Z = u.scaled(m.n[0] + m.n[2] * gu);
  Z += v.scaled(m.n[1] + m.n[2] * gv);
  Z += compose_nonlinear(g, u, v).scaled(m.n[2]);

  m.coeffs = MongeCoeffs(N);
  for (int l = 0; l <= N; ++l)
    for (int j = 0; j <= l; ++j) m.coeffs.at(l, j) = Z.get(l - j, j);
  m.max_low_order = std::max({std::fabs(Z.get(0, 0)), std::fabs(Z.get(1, 0)), std::fabs(Z.get(0, 1))});
  for (int l = 0; l < 2; ++l)
    for (int j = 0; j <= l; ++j) m.coeffs.at(l, j) = 0.0;

  // Second fundamental form in the frame is the Hessian of Z at 0.
  const double p = 2 * m.coeffs(2, 0), q = m.coeffs(2, 1), r = 2 * m.coeffs(2, 2);
  sym_eigen(p, q, r, m.k1, m.k2, m.theta1);
  m.theta2 = m.theta1 + M_PI / 2;
  auto dir = [&m](double t) {
    const double c = std::cos(t), sn = std::sin(t);
    return Vec3{c * m.e1[0] + sn * m.e2[0], c * m.e1[1] + sn * m.e2[1], c * m.e1[2] + sn * m.e2[2]};
  };
  m.d1 = dir(m.theta1);
  m.d2 = dir(m.theta2);

  const double kmax = std::max(std::fabs(m.k1), std::fabs(m.k2));
  const double kzero = tol.umb * std::max(kmax, 1.0);
  if (std::fabs(m.k1) <= kzero && std::fabs(m.k2) <= kzero) {
    // planar point: every direction is asymptotic; report none
  } else if (std::fabs(m.k1) <= kzero) {
    m.asymptotic_theta = {m.theta1};
  } else if (std::fabs(m.k2) <= kzero) {
    m.asymptotic_theta = {m.theta2};
  } else if (m.k1 * m.k2 < 0) {
    const double phi = std::atan(std::sqrt(-m.k1 / m.k2));
    m.asymptotic_theta = {m.theta1 + phi, m.theta1 - phi};
  }
  for (double t : m.asymptotic_theta) m.asymptotic_dirs.push_back(dir(t));

  m.umbilic = std::fabs(m.k1 - m.k2) <= tol.umb * kmax;
  if (m.umbilic && N >= 3) m.beta = beta_from_cubic(m.coeffs(3, 0), m.coeffs(3, 1), m.coeffs(3, 2), m.coeffs(3, 3));
  return m;
}

MongeCoeffs rotate_coeffs(const MongeCoeffs& a, double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  MongeCoeffs out(a.degree());
  for (int l = 0; l <= a.degree(); ++l) {
    for (int j = 0; j <= l; ++j) {
      const double coef = a(l, j);
      if (coef == 0.0) continue;
      // (s X + c Y)^(l-j) (-c X + s Y)^j as coefficients of Y^t.
      std::vector<double> poly{1.0};
      auto mul = [&poly](double px, double py) {
        std::vector<double> r(poly.size() + 1, 0.0);
        for (size_t t = 0; t < poly.size(); ++t) {
          r[t] += poly[t] * px;
          r[t + 1] += poly[t] * py;
        }
        poly.swap(r);
      };
      for (int e = 0; e < l - j; ++e) mul(s, c);
      for (int e = 0; e < j; ++e) mul(-c, s);
      for (int t = 0; t <= l; ++t) out.at(l, t) += coef * poly[t];
    }
  }
  return out;
}

double tangent_angle(const MongeData& m, const Vec3& v, double tol) {
  const double len = std::sqrt(dot(v, v));
  if (len == 0.0) throw std::invalid_argument("direction vector is zero");
  if (std::fabs(dot(v, m.n)) > tol * len) throw std::invalid_argument("direction is not tangent to the surface");
  return std::atan2(dot(v, m.e2), dot(v, m.e1));
}

SurfacePointClass classify_surface_direction(const SurfacePatch& s, double x, double y, double theta, int k,
                                             const SurfaceTolerances& tol) {
  const MongeData m = monge_at_point(s, x, y, JetGerm::kDefaultDegree, tol);
  SurfacePointClass out;
  out.theta = theta;
  if (m.max_low_order >= tol.monge) {
    std::ostringstream os;
    os << "Monge constant/linear residue " << m.max_low_order << " exceeds " << tol.monge;
    out.warnings.push_back(os.str());
  }
  out.rotated = rotate_coeffs(m.coeffs, theta);
  RatPoly f;
  for (int l = 2; l <= out.rotated.degree(); ++l)
    for (int j = 0; j <= l; ++j) f.add_term(l - j, j, snap_rational(out.rotated(l, j), 1e-12));
  const JetGerm germ(k, f);
  ClassifyOptions opts;
  opts.zero.numeric = true;
  opts.zero.tau = tol.cls;
  out.result = classify(germ, opts);
  for (const auto& w : out.result.warnings) out.warnings.push_back(w);
  return out;
}

SurfacePointClass classify_surface_point(const SurfacePatch& s, double x, double y, const Vec3& v, int k,
                                         const SurfaceTolerances& tol) {
  const MongeData m = monge_at_point(s, x, y, 2, tol);
  return classify_surface_direction(s, x, y, tangent_angle(m, v), k, tol);
}

std::optional<std::complex<double>> beta_from_cubic(double c30, double c21, double c12, double c03) {
  // c = Re(A z^3 + B z^2 conj(z)).
  const std::complex<double> A((c30 - c12) / 4, (c03 - c21) / 4);
  const std::complex<double> B((3 * c30 + c12) / 4, (-3 * c03 - c21) / 4);
  const double scale = std::max({std::fabs(c30), std::fabs(c21), std::fabs(c12), std::fabs(c03), 1e-300});
  if (std::abs(A) <= 1e-12 * scale) return std::nullopt;
  const double phi = -std::arg(A) / 3;
  return B * std::polar(1.0, phi) / std::abs(A);
}

}  // namespace kfold
