#include <gtest/gtest.h>

#include <random>

#include "kfold/localalg.hpp"
#include "support.hpp"

using namespace kfold;
using kfold::test::P;

TEST(Quotient, MonomialAndPrincipalCases) {
  EXPECT_EQ(quotient_dim(std::vector<RatPoly>{P({{1, 1, 1}}), P({{2, 0, 1}, {0, 2, 1}})}), LocalDim::finite(4));
  EXPECT_EQ(quotient_dim(std::vector<RatPoly>{P({{1, 1, 1}}), P({{2, 0, 1}, {0, 3, 1}})}), LocalDim::finite(5));
  EXPECT_EQ(quotient_dim(std::vector<RatPoly>{P({{3, 0, 1}}), P({{0, 2, 1}})}), LocalDim::finite(6));
}

TEST(Quotient, InfiniteWhenCommonFactor) {
  // (x - y)^2 and (x - y)(x + y^3)
  const auto d = quotient_dim(std::vector<RatPoly>{P({{2, 0, 1}, {1, 1, -2}, {0, 2, 1}}),
                                                   P({{2, 0, 1}, {1, 1, -1}, {1, 3, 1}, {0, 4, -1}})});
  EXPECT_TRUE(d.is_infinite());
}

TEST(Quotient, BackendsAgree) {
  const std::vector<RatPoly> gens{P({{0, 2, 1}, {7, 0, 1}}), P({{1, 1, 1}, {0, 5, 1}})};
  QuotientOptions exact, modular;
  exact.backend = ElimBackend::Exact;
  modular.backend = ElimBackend::Modular;
  EXPECT_EQ(quotient_dim(gens, exact), quotient_dim(gens, modular));
}

TEST(Milnor, SimpleSingularities) {
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(milnor_number(P({{2, 0, 1}, {0, n + 1, 1}})), LocalDim::finite(n)) << n;
  EXPECT_EQ(milnor_number(P({{2, 1, 1}, {0, 3, -1}})), LocalDim::finite(4));  // D4
  EXPECT_EQ(milnor_number(P({{1, 0, 1}})), LocalDim::finite(0));
  EXPECT_TRUE(milnor_number(P({{2, 0, 1}})).is_infinite());
}

TEST(CurveType, LabelsAndBranches) {
  for (int n = 1; n <= 8; ++n) {
    const auto t = classify_curve_germ(P({{2, 0, 1}, {0, n + 1, 1}}));
    EXPECT_EQ(t.kind, CurveSingType::Kind::A);
    EXPECT_EQ(t.n, n);
    ASSERT_TRUE(t.branch_count);
    EXPECT_EQ(*t.branch_count, n % 2 == 0 ? 1 : 2) << n;
  }
  const auto d4 = classify_curve_germ(P({{2, 1, 1}, {0, 3, -1}}));
  EXPECT_EQ(d4.kind, CurveSingType::Kind::D4);
  EXPECT_EQ(d4.branch_count.value_or(-1), 3);
  EXPECT_EQ(classify_curve_germ(P({{0, 1, 1}, {3, 0, 1}})).kind, CurveSingType::Kind::Regular);
}

TEST(Contact, TangentLines) {
  EXPECT_EQ(intersection_multiplicity(P({{1, 1, 1}}), P({{2, 0, 1}, {0, 2, 1}})), LocalDim::finite(4));
  EXPECT_EQ(parametrized_contact(P({{0, 1, 1}, {2, 0, -1}}), P({{0, 1, 1}, {2, 0, -1}, {5, 0, 1}}), 12).value(), 5);
  EXPECT_THROW(parametrized_contact(P({{2, 0, 1}, {0, 2, 1}}), P({{0, 1, 1}}), 12), std::invalid_argument);
}

TEST(Contact, TwoRoutesAgreeOnRandomPairs) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    // g = y - (series in x); h = g * unit + x^m + ..., so the contact is m
    RatPoly g = P({{0, 1, 1}});
    for (int i = 2; i <= 5; ++i) g.add_term(i, 0, Rational(coef(rng)));
    const int m = 2 + trial % 6;
    RatPoly h = g * P({{0, 0, 1}, {1, 0, coef(rng)}, {0, 1, coef(rng)}});
    h.add_term(m, 0, Rational(1));
    h.add_term(m + 1, 0, Rational(coef(rng)));
    const auto im = intersection_multiplicity(g, h);
    const auto pc = parametrized_contact(g, h, 12);
    ASSERT_TRUE(pc);
    EXPECT_EQ(im, LocalDim::finite(*pc));
    EXPECT_EQ(*pc, m);
  }
}
