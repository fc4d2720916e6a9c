#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kfold/surface.hpp"
#include "kfold/umbilic.hpp"
#include "support.hpp"

using namespace kfold;

namespace {

RatPoly half_x2_plus_y2() {
  RatPoly f;
  f.add_term(2, 0, Rational(1, 2));
  f.add_term(0, 2, Rational(1));
  return f;
}

SurfacePatch patch(const RatPoly& f) {
  SurfacePatch s;
  s.f = f;
  return s;
}

}  // namespace

TEST(Surface, MongeAtOrigin) {
  const MongeData m = monge_at_point(patch(half_x2_plus_y2()), 0, 0);
  EXPECT_NEAR(m.k1, 1.0, 1e-12);
  EXPECT_NEAR(m.k2, 2.0, 1e-12);
  EXPECT_FALSE(m.umbilic);
  EXPECT_TRUE(m.asymptotic_theta.empty());
  EXPECT_LT(m.max_low_order, 1e-10);
}

TEST(Surface, MongeOffOriginHasNoLinearPart) {
  RatPoly f = half_x2_plus_y2();
  f.add_term(3, 0, Rational(1));
  f.add_term(1, 2, Rational(-2));
  const MongeData m = monge_at_point(patch(f), 0.2, -0.1);
  EXPECT_LT(m.max_low_order, 1e-10);
  EXPECT_NEAR(m.coeffs(1, 0), 0.0, 1e-14);
  EXPECT_NEAR(m.coeffs(1, 1), 0.0, 1e-14);
  // Gaussian curvature from the graph formula.
  const double fx = 0.2 * 1 + 3 * 0.04 - 2 * 0.01, fy = 2 * -0.1 - 4 * 0.2 * -0.1;
  const double fxx = 1 + 6 * 0.2, fxy = -4 * -0.1, fyy = 2 - 4 * 0.2;
  const double K = (fxx * fyy - fxy * fxy) / std::pow(1 + fx * fx + fy * fy, 2);
  EXPECT_NEAR(m.k1 * m.k2, K, 1e-9);
}

TEST(Surface, UmbilicBeta) {
  // z = (x^2 + y^2)/2 + Re(z^3 + beta z^2 conj z) with beta = 0.5 - 1.5i.
  const double s = 0.5, t = -1.5;
  RatPoly f;
  f.add_term(2, 0, Rational(1, 2));
  f.add_term(0, 2, Rational(1, 2));
  f.add_term(3, 0, Rational(3, 2));
  f.add_term(2, 1, Rational(3, 2));
  f.add_term(1, 2, Rational(-5, 2));
  f.add_term(0, 3, Rational(3, 2));
  const MongeData m = monge_at_point(patch(f), 0, 0);
  ASSERT_TRUE(m.umbilic);
  ASSERT_TRUE(m.beta.has_value());
  EXPECT_NEAR(m.beta->real(), s, 1e-9);
  EXPECT_NEAR(m.beta->imag(), t, 1e-9);
}

TEST(Surface, RotationConventions) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-2, 2);
  MongeCoeffs a(5);
  for (int l = 2; l <= 5; ++l)
    for (int j = 0; j <= l; ++j) a.at(l, j) = U(rng);
  const MongeCoeffs id = rotate_coeffs(a, std::numbers::pi / 2);
  const MongeCoeffs swap = rotate_coeffs(a, 0);
  for (int l = 2; l <= 5; ++l)
    for (int j = 0; j <= l; ++j) {
      EXPECT_NEAR(id(l, j), a(l, j), 1e-12);
      EXPECT_NEAR(swap(l, j), ((l - j) % 2 ? -1.0 : 1.0) * a(l, l - j), 1e-12);
    }
  // Rotating by t then by pi - t returns the original coefficients.
  const MongeCoeffs back = rotate_coeffs(rotate_coeffs(a, 0.7), std::numbers::pi - 0.7);
  for (int l = 2; l <= 5; ++l)
    for (int j = 0; j <= l; ++j) EXPECT_NEAR(back(l, j), a(l, j), 1e-12);
}

TEST(Surface, UmbilicRotatedCoefficientForms) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-5, 5);
  for (int i = 0; i < 20; ++i) {
    const double s = U(rng), t = U(rng), th = U(rng);
    MongeCoeffs a(3);
    a.at(3, 0) = 1 + s;
    a.at(3, 1) = -t;
    a.at(3, 2) = s - 3;
    a.at(3, 3) = -t;
    const MongeCoeffs r = rotate_coeffs(a, th);
    EXPECT_NEAR(r(3, 1), eval_cubic(umbilic_a31_form({s, t}), th), 1e-12);
    EXPECT_NEAR(r(3, 3), eval_cubic(umbilic_a33_form({s, t}), th), 1e-12);
    const auto b = beta_from_cubic(a(3, 0), a(3, 1), a(3, 2), a(3, 3));
    ASSERT_TRUE(b.has_value());
    EXPECT_NEAR(b->real(), s, 1e-9);
    EXPECT_NEAR(b->imag(), t, 1e-9);
  }
}

TEST(Surface, WhitneyFoldIdentifiesMirrorPoints) {
  const Vec3 v{0.3, -0.4, 1.2};
  const double d = 0.25;
  for (int k : {2, 3, 4, 5}) {
    const Vec3 p{0.4, 0.9, -0.2};
    const Vec3 q = whitney_fold(p, d, v, k);
    // lambda is invariant under moves along v; for even k the reflection
    // p - 2 lambda v has image equal to p's.
    if (k % 2 == 0) {
      const double vv = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
      const double lambda = (d - (p[0] * v[0] + p[1] * v[1] + p[2] * v[2])) / vv;
      const Vec3 mirror{p[0] + 2 * lambda * v[0], p[1] + 2 * lambda * v[1], p[2] + 2 * lambda * v[2]};
      const Vec3 qm = whitney_fold(mirror, d, v, k);
      for (int c = 0; c < 3; ++c) EXPECT_NEAR(q[c], qm[c], 1e-12);
    }
    // The complex version agrees on real input.
    const CVec3 qc = whitney_fold(CVec3{p[0], p[1], p[2]}, d, v, k);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(std::abs(qc[c] - q[c]), 0.0, 1e-12);
  }
}

TEST(Surface, ClassifyAlongTangentDirection) {
  const SurfacePatch s = patch(half_x2_plus_y2());
  const MongeData m = monge_at_point(s, 0, 0);
  EXPECT_THROW(classify_surface_point(s, 0, 0, m.n, 5), std::invalid_argument);
  const SurfacePointClass c = classify_surface_direction(s, 0, 0, 0.3, 5);
  EXPECT_EQ(c.result.label.family, Family::M1);
  const SurfacePointClass q = classify_surface_direction(s, 0, 0, std::numbers::pi / 2, 5);
  EXPECT_EQ(q.result.label.family, Family::NotFinitelyDetermined);
}

TEST(Surface, ValidateRejectsBadPatches) {
  SurfacePatch s = patch(half_x2_plus_y2());
  s.nx = 4;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.nx = 16;
  s.x1 = s.x0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
}
