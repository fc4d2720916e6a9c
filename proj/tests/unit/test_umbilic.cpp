#include <gtest/gtest.h>

#include <random>

#include "kfold/umbilic.hpp"

using namespace kfold;

TEST(Umbilic, RegionCounts) {
  // beta = 0 lies on the line t = 0 and is degenerate; just off it is inside both curves.
  UmbilicReport r = umbilic_analysis({0.0, 0.0});
  EXPECT_TRUE(r.degenerate);
  r = umbilic_analysis({0.1, 0.2});
  EXPECT_TRUE(r.inside_inner);
  EXPECT_EQ(r.m_dir_count, 3);
  EXPECT_EQ(r.n_dir_count, 3);
  r = umbilic_analysis({10.0, 0.5});
  EXPECT_FALSE(r.inside_outer);
  EXPECT_EQ(r.m_dir_count, 1);
  EXPECT_EQ(r.n_dir_count, 1);
  r = umbilic_analysis({2.0, 0.3});
  EXPECT_TRUE(r.inside_outer);
  EXPECT_FALSE(r.inside_inner);
  EXPECT_EQ(r.m_dir_count, 3);
  EXPECT_EQ(r.n_dir_count, 1);
  EXPECT_FALSE(r.degenerate);
  EXPECT_TRUE(r.winding_consistent);
}

TEST(Umbilic, ConjugationInvariance) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-10, 10);
  for (int i = 0; i < 200; ++i) {
    const std::complex<double> b(U(rng), U(rng));
    const UmbilicReport p = umbilic_analysis(b), q = umbilic_analysis(std::conj(b));
    EXPECT_EQ(p.degenerate, q.degenerate);
    if (p.degenerate) continue;
    EXPECT_EQ(p.m_dir_count, q.m_dir_count);
    EXPECT_EQ(p.n_dir_count, q.n_dir_count);
    EXPECT_TRUE(p.winding_consistent);
  }
}

TEST(Umbilic, Discriminant) {
  // (c - s)(c - 2s)(c + s) = c^3 - 2c^2 s - c s^2 + 2 s^3 has three real roots.
  EXPECT_EQ(cubic_real_root_count({1, -2, -1, 2}), 3);
  // c^3 + c s^2 = c (c^2 + s^2) has one.
  EXPECT_EQ(cubic_real_root_count({1, 0, 1, 0}), 1);
  EXPECT_EQ(winding_number(outer_hypocycloid(512), {0.0, 0.0}) != 0, true);
  EXPECT_EQ(winding_number(inner_hypocycloid(512), {5.0, 0.0}), 0);
}
