#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zmoment {

enum class ArithKind { mobius, von_mangoldt, convolution, custom };

inline std::string to_string(ArithKind k) {
  switch (k) {
    case ArithKind::mobius: return "mobius";
    case ArithKind::von_mangoldt: return "von_mangoldt";
    case ArithKind::convolution: return "convolution";
    case ArithKind::custom: return "custom";
  }
  return "custom";
}

// Real-valued arithmetic function on 1..limit. Slot 0 exists but is unused.
class ArithTable {
 public:
  ArithTable(std::vector<double> values, ArithKind kind) : values_(std::move(values)), kind_(kind) {
    if (values_.size() < 2) throw std::invalid_argument("ArithTable: limit must be >= 1");
    values_[0] = 0.0;
  }

  static ArithTable zeros(std::size_t limit, ArithKind kind = ArithKind::custom) {
    check_limit(limit);
    return ArithTable(std::vector<double>(limit + 1, 0.0), kind);
  }
  static ArithTable ones(std::size_t limit) {
    check_limit(limit);
    return ArithTable(std::vector<double>(limit + 1, 1.0), ArithKind::custom);
  }
  static ArithTable delta(std::size_t limit) {
    auto t = zeros(limit);
    t.values_[1] = 1.0;
    return t;
  }

  std::size_t limit() const { return values_.size() - 1; }
  ArithKind kind() const { return kind_; }
  double operator[](std::size_t n) const { return values_[n]; }
  double at(std::size_t n) const {
    if (n == 0 || n > limit()) throw std::out_of_range("ArithTable index");
    return values_[n];
  }
  const std::vector<double>& raw() const { return values_; }

  static void check_limit(std::size_t limit) {
    if (limit == 0) throw std::invalid_argument("arith: limit must be >= 1");
  }

 private:
  std::vector<double> values_;
  ArithKind kind_;
};

// spf[n] = smallest prime factor of n (spf[1] = 1). Linear sieve.
inline std::vector<std::uint32_t> smallest_prime_factors(std::size_t limit) {
  std::vector<std::uint32_t> spf(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  if (limit >= 1) spf[1] = 1;
  for (std::size_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      const std::size_t m = i * p;
      if (p > spf[i] || m > limit) break;
      spf[m] = p;
    }
  }
  return spf;
}

inline ArithTable sieve_mobius(std::size_t limit) {
  ArithTable::check_limit(limit);
  const auto spf = smallest_prime_factors(limit);
  std::vector<double> mu(limit + 1, 0.0);
  mu[1] = 1.0;
  for (std::size_t n = 2; n <= limit; ++n) {
    const std::size_t p = spf[n];
    const std::size_t m = n / p;
    mu[n] = (m % p == 0) ? 0.0 : -mu[m];
  }
  return ArithTable(std::move(mu), ArithKind::mobius);
}

inline ArithTable sieve_von_mangoldt(std::size_t limit) {
  ArithTable::check_limit(limit);
  const auto spf = smallest_prime_factors(limit);
  std::vector<double> lam(limit + 1, 0.0);
  for (std::size_t n = 2; n <= limit; ++n) {
    const std::size_t p = spf[n];
    std::size_t m = n;
    while (m % p == 0) m /= p;
    if (m == 1) lam[n] = std::log(static_cast<double>(p));
  }
  return ArithTable(std::move(lam), ArithKind::von_mangoldt);
}

inline ArithTable dirichlet_convolve(const ArithTable& f, const ArithTable& g) {
  if (f.limit() != g.limit()) throw std::invalid_argument("dirichlet_convolve: limits differ");
  const std::size_t n = f.limit();
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t d = 1; d <= n; ++d) {
    const double fd = f[d];
    if (fd == 0.0) continue;
    for (std::size_t k = 1, m = d; m <= n; ++k, m += d) out[m] += fd * g[k];
  }
  return ArithTable(std::move(out), ArithKind::convolution);
}

// mu * Lambda^{*k}; k = 0 returns the Moebius table itself.
inline ArithTable mu_lambda_power(int k, std::size_t limit) {
  if (k < 0) throw std::invalid_argument("mu_lambda_power: k must be >= 0");
  ArithTable acc = sieve_mobius(limit);
  if (k == 0) return acc;
  const ArithTable lam = sieve_von_mangoldt(limit);
  for (int i = 0; i < k; ++i) acc = dirichlet_convolve(acc, lam);
  return acc;
}

// ---------------------------------------------------------------------------
// Pointwise helpers.

inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline int mobius(std::uint64_t n) {
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

inline bool is_squarefree(std::uint64_t n) { return n != 0 && mobius(n) != 0; }

inline std::uint64_t divisor_count(std::uint64_t n) {
  std::uint64_t t = 1;
  for (auto [p, e] : factorize(n)) t *= static_cast<std::uint64_t>(e + 1);
  return t;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

// Squarefree divisors of n paired with mu(divisor).
inline std::vector<std::pair<std::uint64_t, int>> squarefree_divisors(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out{{1, 1}};
  for (auto [p, e] : factorize(n)) {
    const std::size_t m = out.size();
    for (std::size_t i = 0; i < m; ++i) out.emplace_back(out[i].first * p, -out[i].second);
  }
  return out;
}

// Modular inverse of a mod m via extended Euclid; requires gcd(a, m) = 1.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("mod_inverse: modulus must be positive");
  if (m == 1) return 0;
  std::int64_t r0 = ((a % m) + m) % m, r1 = m;
  std::int64_t s0 = 1, s1 = 0;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::swap(r0, r1);
    r1 -= q * r0;
    std::swap(s0, s1);
    s1 -= q * s0;
  }
  if (r0 != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
  return ((s0 % m) + m) % m;
}

}  // namespace zmoment
