#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "zmoment/arith.hpp"

using namespace zmoment;

namespace {

// Brute force: sum over ordered factorizations n = m l1 ... lk of mu(m) Lambda(l1)...Lambda(lk).
double mu_lambda_chain(std::uint64_t n, int k) {
  if (k == 0) return mobius(n);
  double total = 0.0;
  for (std::uint64_t l = 2; l <= n; ++l) {
    if (n % l) continue;
    const auto f = factorize(l);
    if (f.size() != 1) continue;
    total += std::log(static_cast<double>(f[0].first)) * mu_lambda_chain(n / l, k - 1);
  }
  return total;
}

ArithTable random_table(std::mt19937_64& rng, std::size_t limit) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(limit + 1, 0.0);
  for (std::size_t n = 1; n <= limit; ++n) v[n] = u(rng);
  return ArithTable(v, ArithKind::custom);
}

}  // namespace

TEST(Sieve, MobiusSmallValues) {
  const ArithTable mu = sieve_mobius(30);
  EXPECT_EQ(mu.kind(), ArithKind::mobius);
  EXPECT_EQ(mu[1], 1.0);
  EXPECT_EQ(mu[4], 0.0);
  EXPECT_EQ(mu[30], -1.0);
  EXPECT_EQ(mu[6], 1.0);
}

TEST(Sieve, MobiusMatchesTrialDivision) {
  const ArithTable mu = sieve_mobius(20000);
  for (std::uint64_t n = 1; n <= 20000; ++n) ASSERT_EQ(mu[n], mobius(n)) << n;
}

TEST(Sieve, VonMangoldtValues) {
  const ArithTable lam = sieve_von_mangoldt(100);
  EXPECT_EQ(lam[8], std::log(2.0));
  EXPECT_EQ(lam[6], 0.0);
  EXPECT_EQ(lam[7], std::log(7.0));
  EXPECT_EQ(lam[1], 0.0);
  EXPECT_EQ(lam[81], std::log(3.0));
}

TEST(Sieve, RejectsZeroLimit) {
  EXPECT_THROW(sieve_mobius(0), std::invalid_argument);
  EXPECT_THROW(sieve_von_mangoldt(0), std::invalid_argument);
}

TEST(Convolution, MobiusInvertsOne) {
  const ArithTable c = dirichlet_convolve(sieve_mobius(500), ArithTable::ones(500));
  EXPECT_EQ(c.kind(), ArithKind::convolution);
  for (std::size_t n = 1; n <= 500; ++n) EXPECT_NEAR(c[n], n == 1 ? 1.0 : 0.0, 1e-15) << n;
}

TEST(Convolution, MobiusLambdaAtPrimes) {
  const ArithTable c = dirichlet_convolve(sieve_mobius(100), sieve_von_mangoldt(100));
  for (std::size_t p : {2u, 3u, 5u, 97u}) EXPECT_NEAR(c[p], std::log(static_cast<double>(p)), 1e-15);
}

TEST(Convolution, MismatchedLimitsRejected) {
  EXPECT_THROW(dirichlet_convolve(ArithTable::ones(10), ArithTable::ones(11)), std::invalid_argument);
}

TEST(Convolution, MatchesDivisorChainEnumeration) {
  const ArithTable two = mu_lambda_power(2, 12);
  EXPECT_NEAR(two[12], mu_lambda_chain(12, 2), 1e-13);
  for (int k = 0; k <= 3; ++k) {
    const ArithTable t = mu_lambda_power(k, 400);
    for (std::uint64_t n = 1; n <= 400; ++n) ASSERT_NEAR(t[n], mu_lambda_chain(n, k), 1e-11) << k << " " << n;
  }
}

TEST(Convolution, MuLambdaPowerSpecialValues) {
  EXPECT_EQ(mu_lambda_power(0, 1000).raw(), sieve_mobius(1000).raw());
  const ArithTable one = mu_lambda_power(1, 100);
  EXPECT_NEAR(one[13], std::log(13.0), 1e-15);
  const ArithTable two = mu_lambda_power(2, 100);
  EXPECT_NEAR(two[15], 2.0 * std::log(3.0) * std::log(5.0), 1e-13);
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(mu_lambda_power(k, 10)[1], 0.0);
}

TEST(Convolution, CommutativeAndAssociative) {
  std::mt19937_64 rng(11);
  const ArithTable f = random_table(rng, 300), g = random_table(rng, 300), h = random_table(rng, 300);
  const ArithTable fg = dirichlet_convolve(f, g), gf = dirichlet_convolve(g, f);
  const ArithTable l = dirichlet_convolve(fg, h), r = dirichlet_convolve(f, dirichlet_convolve(g, h));
  for (std::size_t n = 1; n <= 300; ++n) {
    EXPECT_NEAR(fg[n], gf[n], 1e-12);
    EXPECT_NEAR(l[n], r[n], 1e-11);
  }
}

TEST(Convolution, MobiusInversionRoundTrip) {
  std::mt19937_64 rng(12);
  const std::size_t N = 10000;
  const ArithTable f = random_table(rng, N);
  const ArithTable back = dirichlet_convolve(dirichlet_convolve(f, ArithTable::ones(N)), sieve_mobius(N));
  for (std::size_t n = 1; n <= N; ++n) ASSERT_NEAR(back[n], f[n], 1e-12) << n;
}

TEST(Convolution, ChebyshevIdentity) {
  const std::size_t N = 10000;
  const ArithTable s = dirichlet_convolve(sieve_von_mangoldt(N), ArithTable::ones(N));
  for (std::size_t n = 1; n <= N; ++n) ASSERT_NEAR(s[n], std::log(static_cast<double>(n)), 1e-12) << n;
}

TEST(Pointwise, Helpers) {
  EXPECT_EQ(divisor_count(12), 6u);
  EXPECT_EQ(divisor_count(1), 1u);
  EXPECT_EQ(euler_phi(36), 12u);
  EXPECT_EQ(euler_phi(1), 1u);
  EXPECT_EQ(lcm_u64(4, 6), 12u);
  EXPECT_TRUE(is_squarefree(30));
  EXPECT_FALSE(is_squarefree(12));
  EXPECT_EQ(squarefree_divisors(12).size(), 4u);
  for (std::int64_t m : {7, 12, 101, 1000}) {
    for (std::int64_t a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      EXPECT_EQ((a * mod_inverse(a, m)) % m, 1 % m) << a << " " << m;
    }
  }
}
