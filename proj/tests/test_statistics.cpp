#include <gtest/gtest.h>

#include "bdiv/error.hpp"
#include "bdiv/statistics.hpp"
#include "support.hpp"

using namespace bdiv;
using namespace bdiv::testing;

namespace {

std::vector<double> distinct_sample(Rng& rng, std::size_t n, double shift) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.unit() + shift;
  return v;
}

}  // namespace

TEST(MannWhitney, SeparatedSmallSamplesExact) {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  const auto r = mann_whitney_u(a, b);
  EXPECT_EQ(r.u, 0.0);
  EXPECT_TRUE(r.exact);
  EXPECT_DOUBLE_EQ(r.p, 0.1);
  EXPECT_DOUBLE_EQ(oracle_exact_p(a, b), 0.1);
}

TEST(MannWhitney, IdenticalMultisets) {
  const std::vector<double> a{1, 2, 2, 5}, b{2, 5, 1, 2};
  const auto r = mann_whitney_u(a, b);
  EXPECT_EQ(r.u, 8.0);
  EXPECT_NEAR(r.p, 1.0, 1e-12);
}

TEST(MannWhitney, Degenerate) {
  const std::vector<double> a{1, 1}, b{1, 1};
  try {
    mann_whitney_u(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateSamples);
  }
}

TEST(MannWhitney, UComplementIdentity) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    auto a = distinct_sample(rng, 1 + rng.below(12), 0);
    auto b = distinct_sample(rng, 1 + rng.below(12), 0.2);
    // sprinkle ties
    if (rng.bernoulli(0.5)) b[0] = a[0];
    if (a.size() == 1 && b.size() == 1 && a[0] == b[0]) b.push_back(a[0] + 1);
    const double uab = mann_whitney_u(a, b).u;
    const double uba = mann_whitney_u(b, a).u;
    ASSERT_NEAR(uab + uba, static_cast<double>(a.size() * b.size()), 1e-9);
  }
}

TEST(MannWhitney, ExactMatchesEnumerationOracle) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto a = distinct_sample(rng, 1 + rng.below(6), 0);
    const auto b = distinct_sample(rng, 1 + rng.below(7), 0.3 * rng.unit());
    ASSERT_NEAR(mann_whitney_exact_p(a, b), oracle_exact_p(a, b), 1e-12);
  }
}

TEST(MannWhitney, ExactHandlesTies) {
  // a={1,1,2}, b={2,3,3}: midranks 1.5,1.5,3.5 | 3.5,5.5,5.5. Of the 20
  // equally likely 3-subsets, rank sums at least as far from 10.5 as 6.5 are
  // {1.5,1.5,3.5} and {3.5,5.5,5.5} (each twice, via either 3.5), so p = 4/20.
  const std::vector<double> a{1, 1, 2}, b{2, 3, 3};
  EXPECT_NEAR(mann_whitney_exact_p(a, b), 0.2, 1e-12);
}

TEST(MannWhitney, NormalApproximationTracksExact) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto a = distinct_sample(rng, 8 + rng.below(5), 0);
    const auto b = distinct_sample(rng, 8 + rng.below(5), 0.4 * rng.unit());
    ASSERT_NEAR(mann_whitney_normal_p(a, b), mann_whitney_exact_p(a, b), 0.02);
  }
}

TEST(MannWhitney, LargeSamplesUseNormal) {
  Rng rng(1);
  const auto a = distinct_sample(rng, 20, 0);
  const auto b = distinct_sample(rng, 20, 0.5);
  const auto r = mann_whitney_u(a, b);
  EXPECT_FALSE(r.exact);
  EXPECT_LT(r.p, 0.01);
}

TEST(Holm, HandComputedStepDown) {
  const std::vector<double> p{0.01, 0.03, 0.04};
  const auto d = holm_bonferroni(p, 0.05);
  EXPECT_NEAR(d[0].adjusted_p, 0.03, 1e-12);
  EXPECT_NEAR(d[1].adjusted_p, 0.06, 1e-12);
  EXPECT_NEAR(d[2].adjusted_p, 0.06, 1e-12);
  EXPECT_TRUE(d[0].reject);
  EXPECT_FALSE(d[1].reject);
  EXPECT_FALSE(d[2].reject);
}

TEST(Holm, SingleAndNone) {
  const std::vector<double> one{0.04};
  const auto d = holm_bonferroni(one, 0.05);
  EXPECT_DOUBLE_EQ(d[0].adjusted_p, 0.04);
  EXPECT_TRUE(d[0].reject);
  const std::vector<double> two{0.5, 0.6};
  for (const auto& x : holm_bonferroni(two, 0.05)) EXPECT_FALSE(x.reject);
}

TEST(Holm, UnsortedInputKeepsOrderAndMonotonicity) {
  Rng rng(9);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> p(1 + rng.below(8));
    for (auto& x : p) x = rng.unit() * 0.1;
    const auto d = holm_bonferroni(p, 0.05);
    for (std::size_t a = 0; a < p.size(); ++a) {
      EXPECT_GE(d[a].adjusted_p, p[a] - 1e-15);
      EXPECT_LE(d[a].adjusted_p, 1.0);
      for (std::size_t b = 0; b < p.size(); ++b) {
        if (p[a] < p[b]) {
          EXPECT_LE(d[a].adjusted_p, d[b].adjusted_p);
          if (d[b].reject) EXPECT_TRUE(d[a].reject);
        }
      }
    }
  }
}

TEST(Descriptive, MedianAndSd) {
  EXPECT_EQ(median({3, 1, 2}), 2.0);
  EXPECT_EQ(median({4, 1, 2, 3}), 2.5);
  const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_NEAR(standard_deviation(v), 2.138089935299395, 1e-12);
  const std::vector<double> single{1};
  EXPECT_EQ(standard_deviation(single), 0.0);
}

TEST(Descriptive, BootstrapIntervalBracketsMedian) {
  Rng rng(4);
  const auto v = distinct_sample(rng, 20, 0);
  const auto ci = bootstrap_median_ci(v, 0.95, 1000, 17);
  EXPECT_LE(ci.lo, median(v));
  EXPECT_GE(ci.hi, median(v));
  const auto again = bootstrap_median_ci(v, 0.95, 1000, 17);
  EXPECT_EQ(ci.lo, again.lo);
  EXPECT_EQ(ci.hi, again.hi);
  const std::vector<double> constant(5, 0.7);
  const auto flat = bootstrap_median_ci(constant, 0.95, 200, 1);
  EXPECT_EQ(flat.lo, 0.7);
  EXPECT_EQ(flat.hi, 0.7);
}
