#include <gtest/gtest.h>

#include <cmath>

#include "kfold/features.hpp"

using namespace kfold;

namespace {

SurfacePatch make(const RatPoly& f, double r, int n) {
  SurfacePatch s;
  s.f = f;
  s.x0 = s.y0 = -r;
  s.x1 = s.y1 = r;
  s.nx = s.ny = n;
  return s;
}

}  // namespace

TEST(Features, ParabolicLinesOfQuarticSaddle) {
  // z = x^2/2 - y^2/2 + y^4 is parabolic exactly on y = +-1/sqrt(12).
  RatPoly f;
  f.add_term(2, 0, Rational(1, 2));
  f.add_term(0, 2, Rational(-1, 2));
  f.add_term(0, 4, Rational(1));
  const SurfacePatch s = make(f, 0.5, 64);
  const auto curves = trace_features(s, {Feature::Parabolic}, TraceOptions{1});
  ASSERT_EQ(curves.size(), 2u);
  const double y0 = 1.0 / std::sqrt(12.0);
  for (const auto& c : curves) {
    EXPECT_FALSE(c.closed);
    for (const auto& p : c.points) EXPECT_NEAR(std::abs(p[1]), y0, 1e-6);
  }
}

TEST(Features, EllipticPatchHasNoAsymptoticCurves) {
  RatPoly f;
  f.add_term(2, 0, Rational(1, 2));
  f.add_term(0, 2, Rational(1, 2));
  f.add_term(4, 0, Rational(1));
  f.add_term(0, 4, Rational(1));
  const SurfacePatch s = make(f, 0.5, 32);
  const auto curves = trace_features(s, {Feature::Parabolic, Feature::Flecnodal, Feature::H3}, TraceOptions{1});
  EXPECT_TRUE(curves.empty());
  EXPECT_TRUE(feature_points(curves, s).empty());
}

TEST(Features, A2StarTangency) {
  RatPoly f;
  f.add_term(2, 0, Rational(1, 2));
  f.add_term(2, 1, Rational(1));
  f.add_term(1, 2, Rational(1));
  f.add_term(0, 3, Rational(1));
  f.add_term(0, 5, Rational(1));
  const SurfacePatch s = make(f, 0.3, 48);
  const auto t = a2star_tangency(s, 0.0, 0.0);
  ASSERT_TRUE(t.has_value());
  EXPECT_LT(std::hypot(t->x, t->y), 1e-3);
  EXPECT_LT(t->angle, 1e-3);
}

TEST(Features, Names) {
  for (Feature f : {Feature::Parabolic, Feature::Ridge, Feature::SubParabolic, Feature::Flecnodal, Feature::H3})
    EXPECT_EQ(parse_feature(feature_name(f)), f);
  EXPECT_FALSE(parse_feature("umbilic").has_value());
}
