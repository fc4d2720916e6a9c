#include <gtest/gtest.h>

#include "kfold/classify.hpp"
#include "support.hpp"

using namespace kfold;
using kfold::test::P;

TEST(Classify, SmallExamples) {
  ClassifyResult r = classify(JetGerm(5, P({{1, 1, 1}, {0, 2, 1}})));
  EXPECT_EQ(r.label.family, Family::M1);
  EXPECT_EQ(r.label.name(), "M^5_1");
  EXPECT_EQ(r.branch, TwoJetBranch::Branch1);

  r = classify(JetGerm(3, P({{1, 1, 1}, {0, 3, 1}, {0, 5, 1}})));
  EXPECT_EQ(r.label.family, Family::H);
  EXPECT_EQ(r.label.l, 2);

  r = classify(JetGerm(4, P({{0, 1, 1}, {2, 0, 1}})));
  EXPECT_EQ(r.branch, TwoJetBranch::Immersion);
}

TEST(Classify, RejectsBadInput) {
  EXPECT_THROW(classify(JetGerm(2, P({{1, 1, 1}}))), std::invalid_argument);
  EXPECT_THROW(classify(JetGerm(5, P({{1, 1, 1}}), 3)), std::invalid_argument);
}

TEST(Classify, QuadricIsNotFinitelyDetermined) {
  const ClassifyResult r = classify(JetGerm(4, P({{2, 0, 1}})));
  EXPECT_EQ(r.label.family, Family::NotFinitelyDetermined);
}

class NormalForms : public ::testing::TestWithParam<int> {};

TEST_P(NormalForms, ClassifyToThemselvesWithoutOverlap) {
  const int k = GetParam();
  ClassifyOptions opts;
  opts.check_overlap = true;
  for (const NormalFormCase& c : normal_form_cases(k)) {
    const ClassifyResult r = classify(JetGerm(k, c.f), opts);
    EXPECT_EQ(r.label.family, c.label.family) << c.label.name();
    EXPECT_EQ(r.label.l, c.label.l) << c.label.name();
    EXPECT_EQ(r.rows_matched, 1) << c.label.name();
  }
}

INSTANTIATE_TEST_SUITE_P(SmallK, NormalForms, ::testing::Values(3, 4, 5, 6));

TEST(Classify, Codimensions) {
  EXPECT_EQ(table_codim(Family::M1, 1, 5), 1);
  EXPECT_EQ(table_codim(Family::Unclassified, 0, 5), 5);
  EXPECT_FALSE(admissible(Family::N, 5, 3));
  EXPECT_TRUE(admissible(Family::N, 6, 3));
}

TEST(Classify, TableRowMatchesForP2) {
  const auto f = normal_form(Family::P, 5, 2);
  ASSERT_TRUE(f.has_value());
  NormalFormCase c;
  c.label.family = Family::P;
  c.label.k = 5;
  c.label.l = 2;
  c.f = *f;
  const TableRow row = table_row(c);
  EXPECT_EQ(row.verdict, Verdict::Match);
  EXPECT_TRUE(row.computed.mu_consistent);
}
