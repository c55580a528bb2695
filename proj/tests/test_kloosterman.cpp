#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "zmoment/kloosterman.hpp"

using namespace zmoment;

namespace {

// Direct residue sum with no shared tables.
cplx kloosterman_oracle(std::int64_t a, std::int64_t b, std::int64_t c) {
  cplx s = 0.0;
  for (std::int64_t x = 0; x < c; ++x) {
    if (std::gcd(x, c) != 1) continue;
    std::int64_t xi = 0;
    for (std::int64_t y = 0; y < c; ++y)
      if ((x * y) % c == 1 % c) xi = y;
    const double ang = kTwoPi * static_cast<double>(((a * x + b * xi) % c + c) % c) / static_cast<double>(c);
    s += cplx(std::cos(ang), std::sin(ang));
  }
  return s;
}

}  // namespace

TEST(Kloosterman, SmallValues) {
  EXPECT_NEAR(std::abs(complete_kloosterman(1, 1, 2).value - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(complete_kloosterman(1, 1, 3).value + 1.0), 0.0, 1e-14);
  for (std::int64_t c : {1, 7, 12, 30, 97}) {
    EXPECT_NEAR(complete_kloosterman(0, 0, c).value.real(), static_cast<double>(euler_phi(c)), 1e-11);
  }
  EXPECT_THROW(complete_kloosterman(1, 1, 0), std::invalid_argument);
}

TEST(Kloosterman, MatchesOracleAndIsReal) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 200; ++k) {
    const std::int64_t c = 1 + static_cast<std::int64_t>(rng() % 120);
    const std::int64_t a = static_cast<std::int64_t>(rng() % 500) - 250;
    const std::int64_t b = static_cast<std::int64_t>(rng() % 500) - 250;
    const KloostermanRecord r = complete_kloosterman(a, b, c);
    EXPECT_NEAR(std::abs(r.value - kloosterman_oracle(a, b, c)), 0.0, 1e-10);
    EXPECT_NEAR(r.value.imag(), 0.0, 1e-10);
  }
}

TEST(Kloosterman, CrtMultiplicativity) {
  std::mt19937_64 rng(2);
  int checked = 0;
  while (checked < 300) {
    const std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 60), n = 2 + static_cast<std::int64_t>(rng() % 60);
    if (std::gcd(m, n) != 1) continue;
    const std::int64_t a = static_cast<std::int64_t>(rng() % (m * n)), b = static_cast<std::int64_t>(rng() % (m * n));
    const std::int64_t nb = mod_inverse(n % m, m), mb = mod_inverse(m % n, n);
    const cplx lhs = complete_kloosterman(a, b, m * n).value;
    const cplx rhs = complete_kloosterman(a * nb % m, b * nb % m, m).value *
                     complete_kloosterman(a * mb % n, b * mb % n, n).value;
    ASSERT_NEAR(std::abs(lhs - rhs), 0.0, 1e-9) << a << " " << b << " " << m << " " << n;
    ++checked;
  }
}

TEST(Kloosterman, WeilBoundSmallCampaign) {
  const WeilSummary s = weil_campaign(40, 500, 2000, 99);
  EXPECT_EQ(s.failures, 0u);
  EXPECT_GT(s.checked, 2000u);
  EXPECT_LE(s.max_ratio, 1.0);
  EXPECT_NEAR(weil_bound(1, 1, 12), 6.0 * std::sqrt(12.0), 1e-12);
}

TEST(Incomplete, TrivialCases) {
  const IncompleteReport count = incomplete_kloosterman(1, 100, 1, 7, 0, false);
  std::uint64_t coprime = 0;
  for (int f = 1; f <= 100; ++f) coprime += (std::gcd(f, 7) == 1);
  EXPECT_NEAR(count.value.real(), static_cast<double>(coprime), 1e-12);
  EXPECT_EQ(count.terms, coprime);
  const IncompleteReport one = incomplete_kloosterman(5, 5, 3, 101, 17, false);
  EXPECT_NEAR(std::abs(one.value), 1.0, 1e-14);
  const IncompleteReport weighted_out = incomplete_kloosterman(12, 12, 1, 101, 17, true);
  EXPECT_EQ(weighted_out.terms, 0u);
  EXPECT_THROW(incomplete_kloosterman(1, 10, 2, 4, 1, false), std::invalid_argument);
}

TEST(Incomplete, MatchesDirectPhases) {
  const std::int64_t v = 101, e = 3, n = 5;
  const IncompleteReport r = incomplete_kloosterman(1, 1000, e, v, n, true);
  cplx want = 0.0;
  for (std::int64_t f = 1; f <= 1000; ++f) {
    if (!is_squarefree(f) || std::gcd(f, v * e) != 1) continue;
    const std::int64_t inv = mod_inverse((e * f) % v, v);
    const double ang = kTwoPi * static_cast<double>(((-n * inv) % v + v) % v) / static_cast<double>(v);
    want += cplx(std::cos(ang), std::sin(ang));
  }
  EXPECT_NEAR(std::abs(r.value - want), 0.0, 1e-10);
  EXPECT_GT(r.bound, 0.0);
  EXPECT_NEAR(r.ratio, std::abs(r.value) / r.bound, 1e-15);
}

TEST(HeathBrown, IdentitiesExactBelowTwoU) {
  const double U = 500.0;
  const ArithTable mu = sieve_mobius(1000), lam = sieve_von_mangoldt(1000);
  for (std::int64_t n = 1; n <= 1000; ++n) {
    ASSERT_NEAR(heath_brown_mu(n, U), mu[n], 1e-9) << n;
    ASSERT_NEAR(heath_brown_lambda(n, U), lam[n], 1e-9) << n;
  }
  EXPECT_NEAR(heath_brown_lambda(997, U), std::log(997.0), 1e-12);
  EXPECT_THROW(heath_brown_mu(1001, U), std::invalid_argument);
  EXPECT_THROW(heath_brown_lambda(0, U), std::invalid_argument);
}

TEST(TypeSplit, Examples) {
  const RangeSplit one = type_split({1000.0}, 1000.0, std::pow(1000.0, 1.0 / 6.0));
  EXPECT_EQ(one.decision, SplitKind::type_I);
  const double U = 1e6, W = std::pow(U, 1.0 / 6.0);
  // Seven ranges all at most W, product about U.
  const std::vector<double> X(7, std::pow(U, 1.0 / 7.0));
  const RangeSplit s = type_split(X, U, W);
  EXPECT_EQ(s.decision, SplitKind::type_II);
  EXPECT_GE(s.product, W / s.slack);
  EXPECT_LE(s.product, s.slack * U / W);
  EXPECT_THROW(type_split({}, U, W), std::invalid_argument);
  EXPECT_THROW(type_split({2.0, 2.0, 2.0}, U, W), std::invalid_argument);
  EXPECT_THROW(type_split({1e6, 1.0, 1.0}, 1e6, W), std::invalid_argument);  // short variable too long
}

TEST(TypeSplit, RandomAdmissibleTuples) {
  std::mt19937_64 rng(4242);
  int trials = 0;
  while (trials < 10000) {
    const int s = static_cast<int>(rng() % 3);
    const std::size_t r = static_cast<std::size_t>(4 * s + 3);
    const double U = std::ldexp(1.0, 10 + static_cast<int>(rng() % 30));
    const double W = std::pow(U, 1.0 / 6.0);
    std::vector<double> X(r, 1.0);
    // Random dyadic exponents summing to about log2 U.
    int remaining = static_cast<int>(std::log2(U));
    const int short_cap = static_cast<int>(std::floor(std::log2(std::sqrt(2.0 * U))));
    for (std::size_t i = 0; i < r && remaining > 0; ++i) {
      const int cap = i < static_cast<std::size_t>(2 * s + 2) ? std::min(short_cap, remaining) : remaining;
      const int e = i + 1 == r ? remaining : static_cast<int>(rng() % (cap + 1));
      X[i] = std::ldexp(1.0, e);
      remaining -= e;
    }
    RangeSplit out;
    try {
      out = type_split(X, U, W);
    } catch (const std::invalid_argument&) {
      continue;  // drew an inadmissible tuple
    }
    ++trials;
    double prod = 1.0;
    for (std::size_t i : out.subset) prod *= X[i];
    ASSERT_DOUBLE_EQ(prod, out.product);
    const double C = std::ldexp(1.0, static_cast<int>(r));
    if (out.decision == SplitKind::type_I) {
      ASSERT_EQ(out.subset.size(), 1u);
      ASSERT_GE(out.product, U / (C * W));
    } else {
      ASSERT_GE(out.product, W / C);
      ASSERT_LE(out.product, C * U / W);
    }
  }
}

TEST(Bilinear, TrivialCases) {
  const RatioReport z = bilinear_sum_measure(std::vector<double>(8, 0.0), std::vector<double>(8, 1.0),
                                             std::vector<double>(8, 1.0), 8, 8, 8);
  EXPECT_EQ(z.lhs, 0.0);
  const RatioReport one = bilinear_sum_measure({1.0}, {1.0}, {1.0}, 1, 1, 1);
  EXPECT_EQ(one.lhs, 0.0);
  EXPECT_THROW(bilinear_sum_measure({1.0}, {1.0}, {1.0}, 1, 1, 2001), std::invalid_argument);
}

TEST(Bilinear, MatchesDirectSum) {
  std::mt19937_64 rng(8);
  const std::int64_t A = 5, M = 6, N = 7;
  std::vector<double> nu(A), al(M), be(N);
  for (auto* v : {&nu, &al, &be})
    for (auto& x : *v) x = (rng() & 1) ? 1.0 : -1.0;
  cplx want = 0.0;
  for (std::int64_t a = A; a < 2 * A; ++a)
    for (std::int64_t m = M; m < 2 * M; ++m)
      for (std::int64_t n = N; n < 2 * N; ++n) {
        if (std::gcd(m, n) != 1) continue;
        const double ang = kTwoPi * static_cast<double>(a * mod_inverse(m, n) % n) / static_cast<double>(n);
        want += nu[a - A] * al[m - M] * be[n - N] * cplx(std::cos(ang), std::sin(ang));
      }
  EXPECT_NEAR(bilinear_sum_measure(nu, al, be, A, M, N).lhs, std::abs(want), 1e-10);
}

TEST(Trilinear, TrivialAndPreconditions) {
  const RatioReport r = trilinear_sum_measure({cplx(1.0, 0.0)}, 1, 5, 1, 6, 1);
  EXPECT_LE(r.lhs, 30.0 + 1e-12);
  EXPECT_LE(r.ratio, std::sqrt(30.0));
  EXPECT_THROW(trilinear_sum_measure({cplx(1.5, 0.0)}, 1, 1, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(trilinear_sum_measure({cplx(1.0, 0.0)}, 2, 1, 1, 1, 1), std::invalid_argument);
}

TEST(Campaigns, ReproducibleAcrossThreads) {
  const auto a = bilinear_campaign(16, 8, 123, Parallelism{1});
  const auto b = bilinear_campaign(16, 8, 123, Parallelism{4});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].lhs, b[i].lhs);
    EXPECT_EQ(a[i].seed, b[i].seed);
  }
  const auto t = trilinear_campaign(8, 2, 4, 5);
  for (const auto& r : t) EXPECT_GT(r.rhs, 0.0);
  EXPECT_NE(trial_seed(1, 0), trial_seed(1, 1));
}
