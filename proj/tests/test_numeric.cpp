#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "zmoment/numeric.hpp"

using namespace zmoment;

TEST(CompensatedSum, RecoversCancelledSmallTerms) {
  CompensatedSum<double> s;
  for (double x : {1.0, 1e100, 1.0, -1e100}) s.add(x);
  EXPECT_EQ(s.value(), 2.0);
}

TEST(CompensatedSum, HarmonicSumMatchesLongDouble) {
  CompensatedSum<double> s;
  long double ref = 0.0L;
  for (int n = 1000000; n >= 1; --n) ref += 1.0L / n;
  for (int n = 1; n <= 1000000; ++n) s.add(1.0 / n);
  EXPECT_NEAR(s.value(), static_cast<double>(ref), 1e-15 * static_cast<double>(ref));
}

TEST(CompensatedSum, MergeEqualsSequentialAdd) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e8, 1e8);
  CompensatedSum<double> all, left, right;
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    all.add(x);
    (i < 500 ? left : right).add(x);
  }
  left.merge(right);
  EXPECT_NEAR(left.value(), all.value(), 1e-7);
}

TEST(CompensatedSum, ComplexParts) {
  CompensatedSum<cplx> s;
  s.add({1.0, 1e100});
  s.add({1e100, 1.0});
  s.add({-1e100, -1e100});
  EXPECT_EQ(s.value(), cplx(1.0, 1.0));
}

TEST(MapChunks, ResultsInIndexOrderForAnyThreadCount) {
  for (unsigned threads : {1u, 2u, 4u, 16u}) {
    const auto out = map_chunks<int>(37, Parallelism{threads}, [](std::size_t i) { return static_cast<int>(i * i); });
    ASSERT_EQ(out.size(), 37u);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));
  }
}

TEST(MapChunks, PropagatesExceptions) {
  auto fn = [](std::size_t i) -> int {
    if (i == 5) throw std::runtime_error("boom");
    return 0;
  };
  EXPECT_THROW(map_chunks<int>(10, Parallelism{1}, fn), std::runtime_error);
  EXPECT_THROW(map_chunks<int>(10, Parallelism{4}, fn), std::runtime_error);
}

TEST(BalancedRanges, CoverInputContiguously) {
  const auto r = balanced_ranges(1, 1000, 32, [](std::size_t h) { return 1000.0 / static_cast<double>(h); });
  ASSERT_FALSE(r.empty());
  EXPECT_LE(r.size(), 32u);
  EXPECT_EQ(r.front().first, 1u);
  EXPECT_EQ(r.back().second, 1000u);
  for (std::size_t k = 1; k < r.size(); ++k) EXPECT_EQ(r[k].first, r[k - 1].second + 1);
}

TEST(BalancedRanges, EmptyInterval) {
  EXPECT_TRUE(balanced_ranges(5, 4, 8, [](std::size_t) { return 1.0; }).empty());
}

TEST(GaussKronrod, ExactForPolynomials) {
  // The Kronrod rule integrates degree 31 exactly, the Gauss rule degree 19.
  for (int deg : {0, 1, 7, 19, 31}) {
    auto f = [deg](double x) { return std::pow(x, deg); };
    const double exact = (std::pow(2.0, deg + 1) - std::pow(-1.0, deg + 1)) / (deg + 1);
    const auto r = gauss_kronrod21(f, -1.0, 2.0);
    EXPECT_NEAR(r.kronrod, exact, 1e-12 * std::max(1.0, std::abs(exact))) << deg;
    if (deg <= 19) {
      EXPECT_NEAR(r.gauss, exact, 1e-12 * std::max(1.0, std::abs(exact))) << deg;
    }
  }
}

TEST(GaussKronrod, WeightsSumToTwo) {
  const auto r = gauss_kronrod21([](double) { return 1.0; }, -1.0, 1.0);
  EXPECT_NEAR(r.kronrod, 2.0, 1e-15);
  EXPECT_NEAR(r.gauss, 2.0, 1e-15);
}

TEST(IntegrateAdaptive, SmoothAndPeakedIntegrands) {
  const auto a = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 3.0, 1e-14, 1e-14);
  EXPECT_NEAR(a.value, std::exp(3.0) - 1.0, 1e-12);
  EXPECT_TRUE(a.converged);
  const auto b = integrate_adaptive([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-12, 1e-12);
  EXPECT_NEAR(b.value, 2.0 * std::atan(1.0 / 1e-2) / 1e-2, 1e-8);
  EXPECT_GT(b.intervals, 1u);
}

TEST(IntegrateAdaptive, ReportsNonConvergenceAtDepthLimit) {
  const auto r = integrate_adaptive([](double x) { return std::sin(1.0 / (x + 1e-9)); }, 0.0, 1.0, 1e-15, 0.0, 3);
  EXPECT_FALSE(r.converged);
}
