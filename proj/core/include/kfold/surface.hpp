#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "kfold/classify.hpp"
#include "kfold/poly.hpp"

namespace kfold {

using Vec3 = std::array<double, 3>;
using CVec3 = std::array<std::complex<double>, 3>;

// Graph z = f(x, y) over a rectangle, sampled on an nx-by-ny node grid.
struct SurfacePatch {
  RatPoly f;
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  int nx = 64, ny = 64;

  // Throws std::invalid_argument on an empty domain or a grid below 8x8.
  void validate() const;
  bool contains(double x, double y) const;
};

struct SurfaceTolerances {
  double monge = 1e-10;
  double cls = 1e-9;
  double umb = 1e-8;  // relative to max |kappa|
};

// Homogeneous coefficient table: at(l, j) multiplies X^(l-j) Y^j, 0 <= j <= l <= degree.
class MongeCoeffs {
 public:
  MongeCoeffs() = default;
  explicit MongeCoeffs(int degree) : degree_(degree), c_((degree + 1) * (degree + 2) / 2, 0.0) {}

  int degree() const { return degree_; }
  double operator()(int l, int j) const { return l > degree_ ? 0.0 : c_[l * (l + 1) / 2 + j]; }
  double& at(int l, int j) { return c_[l * (l + 1) / 2 + j]; }

 private:
  int degree_ = 0;
  std::vector<double> c_;
};

struct MongeData {
  Vec3 point{};
  Vec3 e1{}, e2{}, n{};  // right-handed, n along the upward graph normal
  MongeCoeffs coeffs;
  double k1 = 0, k2 = 0;                  // k1 <= k2
  double theta1 = 0, theta2 = 0;          // principal directions, angles in (e1, e2)
  Vec3 d1{}, d2{};
  std::vector<double> asymptotic_theta;   // 0, 1 or 2 angles in (e1, e2)
  std::vector<Vec3> asymptotic_dirs;
  bool umbilic = false;
  std::optional<std::complex<double>> beta;  // set at umbilics with a nonzero z^3 part
  double max_low_order = 0;               // largest |constant or linear coefficient|
};

// p + lambda v + lambda^k v with lambda = (d - <p, v>) / <v, v>.
Vec3 whitney_fold(const Vec3& p, double d, const Vec3& v, int k);
CVec3 whitney_fold(const CVec3& p, double d, const Vec3& v, int k);

// Re-expands the graph over the tangent plane at (x, y) up to `degree`.
MongeData monge_at_point(const SurfacePatch& s, double x, double y, int degree = 11,
                         const SurfaceTolerances& tol = {});

// Coefficients of f(X sin t + Y cos t, -X cos t + Y sin t); the direction
// (cos t, sin t) becomes the Y axis.
MongeCoeffs rotate_coeffs(const MongeCoeffs& a, double theta);

// Angle in the Monge frame of a tangent vector; throws if v is not tangent.
double tangent_angle(const MongeData& m, const Vec3& v, double tol = 1e-8);

struct SurfacePointClass {
  ClassifyResult result;
  double theta = 0;
  MongeCoeffs rotated;
  std::vector<std::string> warnings;
};

// Classifies F_k at (x, y) for the plane through the point orthogonal to the
// tangent direction v. The rotated jet is snapped to rationals (1e-12) and
// classified under the numeric zero policy with tolerance tol.cls.
SurfacePointClass classify_surface_point(const SurfacePatch& s, double x, double y, const Vec3& v, int k,
                                         const SurfaceTolerances& tol = {});
SurfacePointClass classify_surface_direction(const SurfacePatch& s, double x, double y, double theta, int k,
                                             const SurfaceTolerances& tol = {});

// beta with Re(z^3 + beta z^2 conj(z)) proportional to the cubic c30 x^3 + c21 x^2 y + c12 x y^2 + c03 y^3
// after a rotation; nullopt when the z^3 part vanishes.
std::optional<std::complex<double>> beta_from_cubic(double c30, double c21, double c12, double c03);

}  // namespace kfold
