#include "kfold/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "kfold/conditions.hpp"
#include "kfold/folding.hpp"

namespace kfold {

std::string feature_name(Feature f) {
  switch (f) {
    case Feature::Parabolic: return "parabolic";
    case Feature::Ridge: return "ridge";
    case Feature::SubParabolic: return "sub-parabolic";
    case Feature::Flecnodal: return "flecnodal";
    case Feature::H3: return "H3";
  }
  return "?";
}

std::optional<Feature> parse_feature(const std::string& s) {
  for (Feature f : {Feature::Parabolic, Feature::Ridge, Feature::SubParabolic, Feature::Flecnodal, Feature::H3})
    if (s == feature_name(f)) return f;
  if (s == "subparabolic") return Feature::SubParabolic;
  if (s == "h3") return Feature::H3;
  return std::nullopt;
}

std::string color_name(const FeatureCurve& c) {
  switch (c.feature) {
    case Feature::Parabolic: return "none";
    case Feature::Ridge:
    case Feature::SubParabolic: return c.color == 1 ? "k1" : "k2";
    default: return c.color == 1 ? "asym1" : "asym2";
  }
}

namespace {

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

int grid_degree(Feature f) {
  switch (f) {
    case Feature::Parabolic: return 2;
    case Feature::H3: return 5;
    default: return 3;
  }
}

bool umbilic_like(const MongeData& m) {
  return std::fabs(m.k2 - m.k1) <= 1e-6 * std::max({std::fabs(m.k1), std::fabs(m.k2), 1.0});
}

Vec3 frame_dir(const MongeData& m, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * m.e1[0] + s * m.e2[0], c * m.e1[1] + s * m.e2[1], c * m.e1[2] + s * m.e2[2]};
}

// Direction angle of (feature, color) at m; nullopt where undefined.
std::optional<double> field_theta(const MongeData& m, Feature f, int color) {
  switch (f) {
    case Feature::Parabolic:
      // The principal direction of the curvature closer to zero.
      return std::fabs(m.k1) <= std::fabs(m.k2) ? m.theta1 : m.theta2;
    case Feature::Ridge:
    case Feature::SubParabolic:
      if (umbilic_like(m)) return std::nullopt;
      return color == 1 ? m.theta1 : m.theta2;
    case Feature::Flecnodal:
    case Feature::H3:
      if (m.asymptotic_theta.size() != 2) return std::nullopt;
      return m.asymptotic_theta[color - 1];
  }
  return std::nullopt;
}

double defining_value(const MongeData& m, Feature f, double theta) {
  switch (f) {
    case Feature::Parabolic: return m.k1 * m.k2;
    case Feature::Ridge:
    case Feature::Flecnodal: {
      const double c = std::cos(theta), s = std::sin(theta);
      return m.coeffs(3, 0) * c * c * c + m.coeffs(3, 1) * c * c * s + m.coeffs(3, 2) * c * s * s +
             m.coeffs(3, 3) * s * s * s;
    }
    case Feature::SubParabolic: return rotate_coeffs(m.coeffs, theta)(3, 1);
    case Feature::H3: {
      const MongeCoeffs r = rotate_coeffs(m.coeffs, theta);
      return r(3, 2) * r(4, 4) - r(5, 5) * r(2, 1);
    }
  }
  return 0;
}

// The next condition along each curve and the type of point where it changes sign.
struct Deeper {
  const char* cond;
  int degree;
  const char* type;
};

std::vector<Deeper> deeper_conditions(Feature f) {
  switch (f) {
    case Feature::Parabolic: return {{"a33", 4, "cusp_of_gauss"}, {"a44", 4, "A2*"}};
    case Feature::Ridge: return {{"CndNA3", 5, "B3"}};
    case Feature::SubParabolic: return {{"a41", 4, "S3"}};
    case Feature::Flecnodal: return {{"a44", 4, "butterfly"}};
    case Feature::H3: return {{"CndH3", 8, "H4"}};
  }
  return {};
}

struct NodeVal {
  double value = 0;
  Vec3 dir{};
  bool valid = false;
};

struct Field {
  Feature feature;
  int color;
};

struct Crossing {
  double x = 0, y = 0;
};

// Evaluates a field at (x, y) with the direction aligned to ref.
std::optional<double> eval_field(const SurfacePatch& s, Feature f, int color, double x, double y, int degree,
                                 const Vec3* ref, Vec3* dir_out, const SurfaceTolerances& tol) {
  if (!s.contains(x, y)) return std::nullopt;
  const MongeData m = monge_at_point(s, x, y, degree, tol);
  if (f == Feature::Parabolic) {
    if (dir_out) *dir_out = {0, 0, 0};
    return m.k1 * m.k2;
  }
  auto th = field_theta(m, f, color);
  if (!th) return std::nullopt;
  double theta = *th;
  Vec3 d = frame_dir(m, theta);
  if (ref && dot3(d, *ref) < 0) {
    theta += M_PI;
    d = {-d[0], -d[1], -d[2]};
  }
  if (dir_out) *dir_out = d;
  return defining_value(m, f, theta);
}

struct Segment {
  long a, b;  // edge ids
};

}  // namespace

std::optional<double> feature_field(const SurfacePatch& s, Feature f, int color, double x, double y, const Vec3* ref,
                                    Vec3* dir_out) {
  return eval_field(s, f, color, x, y, grid_degree(f), ref, dir_out, {});
}

std::vector<FeatureCurve> trace_features(const SurfacePatch& s, const std::vector<Feature>& features,
                                         const TraceOptions& opts) {
  s.validate();
  std::vector<Feature> feats = features;
  std::sort(feats.begin(), feats.end());
  feats.erase(std::unique(feats.begin(), feats.end()), feats.end());
  if (feats.empty()) return {};

  std::vector<Field> fields;
  int degree = 2;
  for (Feature f : feats) {
    degree = std::max(degree, grid_degree(f));
    if (f == Feature::Parabolic) {
      fields.push_back({f, 0});
    } else {
      fields.push_back({f, 1});
      fields.push_back({f, 2});
    }
  }

  const int nx = s.nx, ny = s.ny;
  const double hx = (s.x1 - s.x0) / (nx - 1), hy = (s.y1 - s.y0) / (ny - 1);
  auto X = [&](int i) { return i == nx - 1 ? s.x1 : s.x0 + i * hx; };
  auto Y = [&](int j) { return j == ny - 1 ? s.y1 : s.y0 + j * hy; };
  auto node = [nx](int i, int j) { return static_cast<long>(j) * nx + i; };

  // Node values, one Monge expansion per node shared by all fields.
  std::vector<std::vector<NodeVal>> vals(fields.size(), std::vector<NodeVal>(static_cast<size_t>(nx) * ny));
  parallel_for(nx * ny, opts.workers, [&](int id) {
    const int i = id % nx, j = id / nx;
    const MongeData m = monge_at_point(s, X(i), Y(j), degree, opts.tol);
    for (size_t fi = 0; fi < fields.size(); ++fi) {
      NodeVal& nv = vals[fi][id];
      if (fields[fi].feature == Feature::Parabolic) {
        nv.value = m.k1 * m.k2;
        nv.valid = true;
        continue;
      }
      auto th = field_theta(m, fields[fi].feature, fields[fi].color);
      if (!th) continue;
      nv.value = defining_value(m, fields[fi].feature, *th);
      nv.dir = frame_dir(m, *th);
      nv.valid = true;
    }
  });

  std::vector<FeatureCurve> out;
  for (size_t fi = 0; fi < fields.size(); ++fi) {
    const Field fld = fields[fi];
    const auto& v = vals[fi];
    const bool oriented = fld.feature != Feature::Parabolic;

    // Edge ids: 2 * node for the edge to (i+1, j), 2 * node + 1 for the edge to (i, j+1).
    auto edge_nodes = [&](long e, int& i0, int& j0, int& i1, int& j1) {
      const long n = e / 2;
      i0 = static_cast<int>(n % nx);
      j0 = static_cast<int>(n / nx);
      i1 = i0 + (e % 2 == 0 ? 1 : 0);
      j1 = j0 + (e % 2 == 1 ? 1 : 0);
    };

    std::vector<Segment> segments;
    std::map<long, bool> crossing_edges;  // edge -> exists
    for (int j = 0; j + 1 < ny; ++j)
      for (int i = 0; i + 1 < nx; ++i) {
        const long c[4] = {node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)};
        bool ok = true;
        for (long id : c) ok = ok && v[id].valid;
        if (!ok) continue;
        double w[4];
        for (int q = 0; q < 4; ++q) {
          w[q] = v[c[q]].value;
          if (oriented) {
            const double d = dot3(v[c[q]].dir, v[c[0]].dir);
            if (std::fabs(d) < 0.5) ok = false;
            if (d < 0) w[q] = -w[q];
          }
        }
        if (!ok) continue;
        const bool pos[4] = {w[0] >= 0, w[1] >= 0, w[2] >= 0, w[3] >= 0};
        const long e[4] = {2 * c[0], 2 * c[1] + 1, 2 * c[3], 2 * c[0] + 1};  // bottom, right, top, left
        const bool cut[4] = {pos[0] != pos[1], pos[1] != pos[2], pos[3] != pos[2], pos[0] != pos[3]};
        const int ncut = cut[0] + cut[1] + cut[2] + cut[3];
        if (ncut == 0) continue;
        for (int q = 0; q < 4; ++q)
          if (cut[q]) crossing_edges[e[q]] = true;
        if (ncut == 2) {
          int a = -1, b = -1;
          for (int q = 0; q < 4; ++q)
            if (cut[q]) (a < 0 ? a : b) = q;
          segments.push_back({e[a], e[b]});
        } else if (ncut == 4) {
          Vec3 ref = v[c[0]].dir;
          auto center = eval_field(s, fld.feature, fld.color, X(i) + hx / 2, Y(j) + hy / 2, grid_degree(fld.feature),
                                   oriented ? &ref : nullptr, nullptr, opts.tol);
          const bool cpos = center ? *center >= 0 : pos[0];
          if (cpos == pos[0]) {
            segments.push_back({e[0], e[1]});
            segments.push_back({e[2], e[3]});
          } else {
            segments.push_back({e[3], e[0]});
            segments.push_back({e[1], e[2]});
          }
        }
      }
    if (segments.empty()) continue;

    // Refine every crossing by bisection along its edge.
    std::vector<long> edges;
    for (const auto& [e, _] : crossing_edges) edges.push_back(e);
    std::vector<Crossing> pts(edges.size());
    parallel_for(static_cast<int>(edges.size()), opts.workers, [&](int idx) {
      int i0, j0, i1, j1;
      edge_nodes(edges[idx], i0, j0, i1, j1);
      const NodeVal& A = v[node(i0, j0)];
      const NodeVal& B = v[node(i1, j1)];
      const Vec3 ref = A.dir;
      double fa = A.value;
      double fb = B.value;
      if (oriented && dot3(A.dir, B.dir) < 0) fb = -fb;
      const double ax = X(i0), ay = Y(j0), bx = X(i1), by = Y(j1);
      double t0 = 0, t1 = 1;
      const double len = std::hypot(bx - ax, by - ay);
      while ((t1 - t0) * len > opts.refine_tol) {
        const double tm = 0.5 * (t0 + t1);
        auto fm = eval_field(s, fld.feature, fld.color, ax + tm * (bx - ax), ay + tm * (by - ay),
                             grid_degree(fld.feature), oriented ? &ref : nullptr, nullptr, opts.tol);
        if (!fm) break;
        if ((*fm >= 0) == (fa >= 0)) {
          t0 = tm;
          fa = *fm;
        } else {
          t1 = tm;
          fb = *fm;
        }
      }
      double t = 0.5 * (t0 + t1);
      if (fa != fb) t = std::clamp(t0 + (t1 - t0) * fa / (fa - fb), t0, t1);
      pts[idx] = {ax + t * (bx - ax), ay + t * (by - ay)};
    });
    std::map<long, size_t> edge_index;
    for (size_t q = 0; q < edges.size(); ++q) edge_index[edges[q]] = q;

    // Chain segments into polylines.
    std::map<long, std::vector<long>> adj;
    for (const auto& sg : segments) {
      adj[sg.a].push_back(sg.b);
      adj[sg.b].push_back(sg.a);
    }
    std::map<long, bool> used;
    auto walk = [&](long start) {
      FeatureCurve cv;
      cv.feature = fld.feature;
      cv.color = fld.color;
      long prev = -1, cur = start;
      while (true) {
        used[cur] = true;
        const Crossing& p = pts[edge_index[cur]];
        cv.points.push_back({p.x, p.y});
        long next = -1;
        for (long nb : adj[cur])
          if (nb != prev && !used[nb]) {
            next = nb;
            break;
          }
        if (next < 0) {
          // Closed when the start is adjacent to the last edge.
          const auto& a = adj[cur];
          if (cv.points.size() > 2 && std::find(a.begin(), a.end(), start) != a.end() && cur != start) {
            cv.closed = true;
            cv.points.push_back(cv.points.front());
          }
          break;
        }
        prev = cur;
        cur = next;
      }
      return cv;
    };
    for (const auto& [e, nb] : adj)
      if (nb.size() == 1 && !used[e]) out.push_back(walk(e));
    for (const auto& [e, nb] : adj)
      if (!used[e]) out.push_back(walk(e));
  }

  // Special points: sign changes of the next condition along each curve.
  parallel_for(static_cast<int>(out.size()), opts.workers, [&](int ci) {
    FeatureCurve& cv = out[ci];
    for (const Deeper& dc : deeper_conditions(cv.feature)) {
      double prev_val = 0;
      bool have_prev = false;
      std::optional<Vec3> ref;
      for (size_t q = 0; q < cv.points.size(); ++q) {
        const auto [x, y] = cv.points[q];
        const MongeData m = monge_at_point(s, x, y, dc.degree, opts.tol);
        auto th = field_theta(m, cv.feature, cv.feature == Feature::Parabolic ? 1 : cv.color);
        if (!th) {
          have_prev = false;
          ref.reset();
          continue;
        }
        double theta = *th;
        Vec3 d = frame_dir(m, theta);
        if (ref && dot3(d, *ref) < 0) {
          theta += M_PI;
          d = {-d[0], -d[1], -d[2]};
        }
        ref = d;
        const MongeCoeffs r = rotate_coeffs(m.coeffs, theta);
        double val;
        try {
          val = condition_value_real(dc.cond, [&r](int a, int b) { return r(a, b); });
        } catch (const std::exception&) {
          have_prev = false;
          continue;
        }
        if (have_prev && (prev_val < 0) != (val < 0) && prev_val != val) {
          const double t = prev_val / (prev_val - val);
          const auto [px, py] = cv.points[q - 1];
          cv.special_points.push_back({dc.type, px + t * (x - px), py + t * (y - py), -1});
        }
        prev_val = val;
        have_prev = true;
      }
    }
  });

  for (size_t q = 0; q < out.size(); ++q) out[q].curve_id = static_cast<int>(q);
  return out;
}

namespace {

struct Seg2 {
  std::array<double, 2> a, b;
};

std::optional<std::array<double, 2>> segment_intersection(const Seg2& p, const Seg2& q) {
  const double rx = p.b[0] - p.a[0], ry = p.b[1] - p.a[1];
  const double sx = q.b[0] - q.a[0], sy = q.b[1] - q.a[1];
  const double den = rx * sy - ry * sx;
  if (den == 0.0) return std::nullopt;
  const double qpx = q.a[0] - p.a[0], qpy = q.a[1] - p.a[1];
  const double t = (qpx * sy - qpy * sx) / den;
  const double u = (qpx * ry - qpy * rx) / den;
  if (t < 0 || t > 1 || u < 0 || u > 1) return std::nullopt;
  return std::array<double, 2>{p.a[0] + t * rx, p.a[1] + t * ry};
}

double point_polyline_distance(const std::array<double, 2>& p, const FeatureCurve& c, std::array<double, 2>& foot) {
  double best = INFINITY;
  for (size_t q = 0; q + 1 < c.points.size(); ++q) {
    const auto& a = c.points[q];
    const auto& b = c.points[q + 1];
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double l2 = dx * dx + dy * dy;
    double t = l2 > 0 ? ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / l2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const std::array<double, 2> f{a[0] + t * dx, a[1] + t * dy};
    const double d = std::hypot(p[0] - f[0], p[1] - f[1]);
    if (d < best) {
      best = d;
      foot = f;
    }
  }
  return best;
}

const char* pair_type(const FeatureCurve& a, const FeatureCurve& b) {
  auto is = [&](Feature x, Feature y) { return a.feature == x && b.feature == y; };
  if (is(Feature::Ridge, Feature::SubParabolic) && a.color == b.color) return "C3";
  if (is(Feature::Parabolic, Feature::Flecnodal)) return "cusp_of_gauss";
  if (is(Feature::Parabolic, Feature::H3)) return "A2*";
  if (is(Feature::Flecnodal, Feature::H3) && a.color == b.color) return "Q4";
  if (is(Feature::Parabolic, Feature::SubParabolic)) return "X4";
  return nullptr;
}

}  // namespace

std::vector<SpecialPoint> feature_points(const std::vector<FeatureCurve>& curves, const SurfacePatch& s) {
  const double cell = std::max((s.x1 - s.x0) / (s.nx - 1), (s.y1 - s.y0) / (s.ny - 1));
  std::vector<SpecialPoint> found;
  for (size_t p = 0; p < curves.size(); ++p)
    for (size_t q = 0; q < curves.size(); ++q) {
      if (p == q) continue;
      const char* type = pair_type(curves[p], curves[q]);
      if (!type) continue;
      const FeatureCurve& A = curves[p];
      const FeatureCurve& B = curves[q];
      for (size_t i = 0; i + 1 < A.points.size(); ++i)
        for (size_t j = 0; j + 1 < B.points.size(); ++j)
          if (auto x = segment_intersection({A.points[i], A.points[i + 1]}, {B.points[j], B.points[j + 1]}))
            found.push_back({type, (*x)[0], (*x)[1], -1});
      // Flecnodal and H3 curves touch the parabolic curve tangentially and are
      // cut off where the asymptotic frame ends; the contact is taken from the
      // sign change recorded on the parabolic curve when the other curve comes
      // within two cells of it.
      if (A.feature == Feature::Parabolic && (B.feature == Feature::Flecnodal || B.feature == Feature::H3)) {
        for (const auto& sp : A.special_points) {
          if (sp.type != type) continue;
          std::array<double, 2> foot{};
          if (point_polyline_distance({sp.x, sp.y}, B, foot) <= 2 * cell) found.push_back(sp);
        }
      }
    }
  std::vector<SpecialPoint> out;
  for (const auto& sp : found) {
    bool dup = false;
    for (const auto& o : out)
      if (o.type == sp.type && std::hypot(o.x - sp.x, o.y - sp.y) <= 2 * cell) dup = true;
    if (!dup) out.push_back(sp);
  }
  return out;
}

namespace {

// (det II, a44 along the flat principal direction) for the A2* system.
std::array<double, 2> a2star_system(const SurfacePatch& s, double x, double y) {
  const MongeData m = monge_at_point(s, x, y, 4);
  const double theta = std::fabs(m.k1) <= std::fabs(m.k2) ? m.theta1 : m.theta2;
  return {m.k1 * m.k2, rotate_coeffs(m.coeffs, theta)(4, 4)};
}

}  // namespace

std::optional<TangencyMeasure> a2star_tangency(const SurfacePatch& s, double x, double y, double h) {
  // Newton on (det II, a44) = 0 with a central-difference Jacobian.
  const double eps = 1e-6;
  for (int it = 0; it < 50; ++it) {
    const auto F = a2star_system(s, x, y);
    const auto Fxp = a2star_system(s, x + eps, y), Fxm = a2star_system(s, x - eps, y);
    const auto Fyp = a2star_system(s, x, y + eps), Fym = a2star_system(s, x, y - eps);
    const double J00 = (Fxp[0] - Fxm[0]) / (2 * eps), J01 = (Fyp[0] - Fym[0]) / (2 * eps);
    const double J10 = (Fxp[1] - Fxm[1]) / (2 * eps), J11 = (Fyp[1] - Fym[1]) / (2 * eps);
    const double det = J00 * J11 - J01 * J10;
    if (det == 0.0) return std::nullopt;
    const double dx = (J11 * F[0] - J01 * F[1]) / det;
    const double dy = (-J10 * F[0] + J00 * F[1]) / det;
    x -= dx;
    y -= dy;
    if (!s.contains(x, y)) return std::nullopt;
    if (std::hypot(dx, dy) < 1e-13) break;
  }
  const double gx = (a2star_system(s, x + eps, y)[0] - a2star_system(s, x - eps, y)[0]) / (2 * eps);
  const double gy = (a2star_system(s, x, y + eps)[0] - a2star_system(s, x, y - eps)[0]) / (2 * eps);
  const double tx = -gy, ty = gx;

  // H3 zeros of both asymptotic families on the circle of radius h. The
  // branches hug the parabolic curve, so samples are densified at the edge
  // of the hyperbolic arc.
  const int M = 720;
  auto on_circle = [&](double psi) { return std::array<double, 2>{x + h * std::cos(psi), y + h * std::sin(psi)}; };
  auto hyperbolic = [&](double psi) {
    const auto p = on_circle(psi);
    return monge_at_point(s, p[0], p[1], 2).asymptotic_theta.size() == 2;
  };
  std::vector<double> psis;
  for (int q = 0; q <= M; ++q) {
    const double psi = 2 * M_PI * q / M;
    if (q > 0) {
      const double prev = 2 * M_PI * (q - 1) / M;
      const bool hp = hyperbolic(prev), hq = hyperbolic(psi);
      if (hp != hq) {
        double a = prev, b = psi;  // a keeps the status of prev
        for (int it = 0; it < 60; ++it) {
          const double m = 0.5 * (a + b);
          (hyperbolic(m) == hp ? a : b) = m;
        }
        for (int e = 1; e <= 6; ++e) {
          // Geometric approach to the edge from the hyperbolic side.
          const double edge = hp ? a : b;
          const double step = (psi - prev) * std::pow(10.0, -e);
          psis.push_back(hp ? edge - step : edge + step);
        }
        if (hp) std::reverse(psis.end() - 6, psis.end());
      }
    }
    psis.push_back(psi);
  }
  std::sort(psis.begin(), psis.end());

  std::vector<std::array<double, 2>> roots;
  for (int color = 1; color <= 2; ++color) {
    std::optional<double> prev;
    std::optional<Vec3> ref;
    double prev_psi = 0;
    for (double psi : psis) {
      Vec3 d;
      const auto p = on_circle(psi);
      auto val = feature_field(s, Feature::H3, color, p[0], p[1], ref ? &*ref : nullptr, &d);
      if (!val) {
        prev.reset();
        ref.reset();
        continue;
      }
      if (prev && (*prev < 0) != (*val < 0)) {
        double a = prev_psi, b = psi, fa = *prev;
        Vec3 ra = *ref;
        for (int it = 0; it < 60; ++it) {
          const double m = 0.5 * (a + b);
          Vec3 dm;
          const auto pm = on_circle(m);
          auto fm = feature_field(s, Feature::H3, color, pm[0], pm[1], &ra, &dm);
          if (!fm) break;
          if ((*fm < 0) == (fa < 0)) {
            a = m;
            fa = *fm;
            ra = dm;
          } else {
            b = m;
          }
        }
        roots.push_back(on_circle(0.5 * (a + b)));
      }
      prev = val;
      ref = d;
      prev_psi = psi;
    }
  }
  if (roots.size() < 2) return std::nullopt;
  // The chord through P* is the pair of roots farthest apart.
  double best = -1;
  std::array<double, 2> c{};
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j) {
      const double d = std::hypot(roots[i][0] - roots[j][0], roots[i][1] - roots[j][1]);
      if (d > best) {
        best = d;
        c = {roots[j][0] - roots[i][0], roots[j][1] - roots[i][1]};
      }
    }
  const double cr = std::fabs(c[0] * ty - c[1] * tx);
  const double dt = std::fabs(c[0] * tx + c[1] * ty);
  return TangencyMeasure{x, y, std::atan2(cr, dt)};
}

}  // namespace kfold
