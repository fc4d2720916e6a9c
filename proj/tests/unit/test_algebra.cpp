#include <gtest/gtest.h>

#include <cmath>

#include "kfold/cyclotomic.hpp"
#include "kfold/folding.hpp"
#include "support.hpp"

using namespace kfold;
using kfold::test::P;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("6/-4"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("-0.125"), Rational(-1, 8));
  EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
  EXPECT_EQ(to_string(make_rational(4, 2)), "2");
  EXPECT_EQ(make_rational(6, -4), Rational(-3, 2));
  EXPECT_EQ(to_string(Rational(-1, 3)), "-1/3");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Rational, SnapFindsSmallDenominators) {
  EXPECT_EQ(snap_rational(1.0 / 3.0), Rational(1, 3));
  EXPECT_EQ(snap_rational(-22.0 / 7.0), Rational(-22, 7));
  EXPECT_EQ(snap_rational(1e-14), Rational(0));
  EXPECT_NEAR(to_double(snap_rational(M_PI)), M_PI, 1e-12);
}

TEST(Poly, ArithmeticAndDerivatives) {
  const RatPoly f = P({{2, 1, 3}, {0, 4, 1}});
  const RatPoly fx = partial_derivative(f, Var::X);
  const RatPoly fy = partial_derivative(f, Var::Y);
  EXPECT_EQ(fx, P({{1, 1, 6}}));
  EXPECT_EQ(fy, P({{2, 0, 3}, {0, 3, 4}}));
  EXPECT_EQ(f.order(), 3);
  EXPECT_EQ(f.total_degree(), 4);
  EXPECT_EQ(truncate_jet(f, 3), P({{2, 1, 3}}));
  EXPECT_EQ(exact_divide_by_y(f), P({{2, 0, 3}, {0, 3, 1}}));
}

TEST(Cyclotomic, RootsOfUnity) {
  for (int k = 2; k <= 12; ++k) {
    const CycloNum xi = CycloNum::root_of_unity(k, 1);
    EXPECT_TRUE(xi.pow(k).is_one()) << k;
    CycloNum sum = CycloNum::zero(k);
    for (int s = 0; s < k; ++s) sum += xi.pow(s);
    EXPECT_TRUE(sum.is_zero()) << k;
    EXPECT_NEAR(std::abs(xi.to_complex() - std::polar(1.0, 2 * M_PI / k)), 0.0, 1e-12);
  }
}

TEST(Cyclotomic, InverseAndConjugate) {
  const int k = 9;
  const CycloNum a = CycloNum::root_of_unity(k, 2) * Rational(3) + CycloNum(k, Rational(1, 2));
  EXPECT_TRUE((a * a.inverse()).is_one());
  const auto z = a.to_complex(), zc = a.conj().to_complex();
  EXPECT_NEAR(std::abs(std::conj(z) - zc), 0.0, 1e-12);
  EXPECT_TRUE((a * a.conj()).is_rational() || std::abs((a * a.conj()).to_complex().imag()) < 1e-12);
  EXPECT_EQ(euler_phi(12), 4);
}

TEST(Vartheta, ClosedValues) {
  EXPECT_TRUE(vartheta(1, 2, 7).is_one());
  EXPECT_TRUE(vartheta(2, 2, 4).is_zero());
  EXPECT_TRUE(vartheta(4, 1, 3).is_one());
  EXPECT_TRUE(vartheta(0, 1, 5).is_zero());
  EXPECT_THROW(vartheta(2, 5, 5), std::invalid_argument);
}
