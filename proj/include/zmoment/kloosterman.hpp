#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "zmoment/arith.hpp"
#include "zmoment/numeric.hpp"

namespace zmoment {

struct KloostermanRecord {
  std::int64_t a = 0, b = 0, c = 1;
  cplx value;
  double weil_bound = 0.0;
  bool satisfied = false;
};

inline double weil_bound(std::int64_t a, std::int64_t b, std::int64_t c) {
  const auto g = std::gcd(std::gcd(a, b), c);
  return static_cast<double>(divisor_count(static_cast<std::uint64_t>(c))) *
         std::sqrt(static_cast<double>(c)) * std::sqrt(static_cast<double>(g));
}

namespace detail {
inline std::int64_t mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }
}  // namespace detail

// Evaluates many sums with the same modulus, reusing the unit inverses and the
// table of roots of unity.
class KloostermanEvaluator {
 public:
  explicit KloostermanEvaluator(std::int64_t c) : c_(c) {
    if (c < 1) throw std::invalid_argument("kloosterman: modulus must be >= 1");
    roots_.resize(static_cast<std::size_t>(c));
    for (std::int64_t k = 0; k < c; ++k) {
      const double ang = kTwoPi * static_cast<double>(k) / static_cast<double>(c);
      roots_[static_cast<std::size_t>(k)] = {std::cos(ang), std::sin(ang)};
    }
    for (std::int64_t x = 0; x < c; ++x) {
      if (std::gcd(x, c) == 1) units_.push_back({x, mod_inverse(x, c)});
    }
  }

  std::int64_t modulus() const { return c_; }

  KloostermanRecord operator()(std::int64_t a, std::int64_t b) const {
    const std::int64_t ar = detail::mod(a, c_), br = detail::mod(b, c_);
    CompensatedSum<double> re, im;
    for (const auto& [x, xi] : units_) {
      const auto k = static_cast<std::size_t>((ar * x + br * xi) % c_);
      re.add(roots_[k].real());
      im.add(roots_[k].imag());
    }
    KloostermanRecord r;
    r.a = a;
    r.b = b;
    r.c = c_;
    r.value = {re.value(), im.value()};
    r.weil_bound = weil_bound(a, b, c_);
    r.satisfied = std::abs(r.value) <= r.weil_bound * (1.0 + 1e-12) + 1e-9;
    return r;
  }

 private:
  std::int64_t c_;
  std::vector<cplx> roots_;
  std::vector<std::pair<std::int64_t, std::int64_t>> units_;
};

// S(a, b; c) = sum over units x mod c of e((a x + b xbar)/c).
inline KloostermanRecord complete_kloosterman(std::int64_t a, std::int64_t b, std::int64_t c) {
  return KloostermanEvaluator(c)(a, b);
}

struct WeilSummary {
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  double max_ratio = 0.0;  // max |S| / bound
};

// Exhaustive check for c <= exhaustive_cmax, then `random_count` random
// triples with c <= cmax drawn from `seed`.
inline WeilSummary weil_campaign(std::int64_t exhaustive_cmax, std::int64_t cmax,
                                 std::uint64_t random_count, std::uint64_t seed) {
  WeilSummary s;
  auto record = [&](const KloostermanRecord& r) {
    ++s.checked;
    if (!r.satisfied) ++s.failures;
    if (r.weil_bound > 0) s.max_ratio = std::max(s.max_ratio, std::abs(r.value) / r.weil_bound);
  };
  for (std::int64_t c = 1; c <= exhaustive_cmax; ++c) {
    const KloostermanEvaluator ev(c);
    for (std::int64_t a = 0; a < c; ++a)
      for (std::int64_t b = 0; b < c; ++b) record(ev(a, b));
  }
  if (random_count == 0 || cmax < 1) return s;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> cdist(1, cmax);
  struct Triple {
    std::int64_t a, b, c;
  };
  std::vector<Triple> triples(random_count);
  for (auto& t : triples) {
    t.c = cdist(rng);
    std::uniform_int_distribution<std::int64_t> rdist(0, t.c - 1);
    t.a = rdist(rng);
    t.b = rdist(rng);
  }
  std::stable_sort(triples.begin(), triples.end(), [](const Triple& x, const Triple& y) { return x.c < y.c; });
  std::size_t i = 0;
  while (i < triples.size()) {
    const KloostermanEvaluator ev(triples[i].c);
    for (; i < triples.size() && triples[i].c == ev.modulus(); ++i) record(ev(triples[i].a, triples[i].b));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Incomplete sums.

struct IncompleteReport {
  cplx value;
  std::uint64_t terms = 0;
  double bound = 0.0;  // F^{1/2} v^{1/4} (1 + F^{1/2} v^{-1/2}) (n, v)^{1/2}
  double ratio = 0.0;
};

// sum over f in [f_lo, f_hi] with (f, v e) = 1 of [mu^2(f)] e(-n conj(e f) / v).
inline IncompleteReport incomplete_kloosterman(std::int64_t f_lo, std::int64_t f_hi, std::int64_t e_val,
                                               std::int64_t v, std::int64_t n_val, bool squarefree_weight) {
  if (v < 1) throw std::invalid_argument("incomplete_kloosterman: modulus must be >= 1");
  if (f_lo < 1 || f_hi < f_lo) throw std::invalid_argument("incomplete_kloosterman: bad interval");
  if (f_hi - f_lo + 1 > 1000000) throw std::invalid_argument("incomplete_kloosterman: interval longer than 1e6");
  if (std::gcd(detail::mod(e_val, v), v) != 1 && v > 1)
    throw std::invalid_argument("incomplete_kloosterman: multiplier not coprime to modulus");
  const auto len = static_cast<std::size_t>(f_hi - f_lo + 1);
  std::vector<char> sqfree(len, 1);
  if (squarefree_weight) {
    for (std::int64_t p = 2; p * p <= f_hi; ++p) {
      const std::int64_t q = p * p;
      for (std::int64_t m = ((f_lo + q - 1) / q) * q; m <= f_hi; m += q) sqfree[static_cast<std::size_t>(m - f_lo)] = 0;
    }
  }
  const std::int64_t ve = v * std::abs(e_val == 0 ? 1 : e_val);
  const std::int64_t er = detail::mod(e_val, v);
  CompensatedSum<cplx> acc;
  IncompleteReport r;
  for (std::int64_t f = f_lo; f <= f_hi; ++f) {
    if (!sqfree[static_cast<std::size_t>(f - f_lo)]) continue;
    if (std::gcd(f, ve) != 1) continue;
    const std::int64_t inv = v == 1 ? 0 : mod_inverse((er * (f % v)) % v, v);
    const std::int64_t k = detail::mod(-detail::mod(n_val, v) * inv, v);
    const double ang = kTwoPi * static_cast<double>(k) / static_cast<double>(v);
    acc.add({std::cos(ang), std::sin(ang)});
    ++r.terms;
  }
  r.value = acc.value();
  const double F = static_cast<double>(f_hi);
  const double g = static_cast<double>(std::gcd(detail::mod(n_val, v) == 0 ? v : n_val, v));
  r.bound = std::sqrt(F) * std::pow(static_cast<double>(v), 0.25) *
            (1.0 + std::sqrt(F / static_cast<double>(v))) * std::sqrt(g);
  r.ratio = std::abs(r.value) / r.bound;
  return r;
}

// ---------------------------------------------------------------------------
// Heath-Brown identities with K = 2; the m-variables are at most (2U)^{1/2}.

namespace detail {
inline void check_heath_brown(std::int64_t n, double U) {
  if (n < 1) throw std::invalid_argument("heath_brown: n must be >= 1");
  if (!(U >= 1.0)) throw std::invalid_argument("heath_brown: U must be >= 1");
  if (static_cast<double>(n) > 2.0 * U) throw std::invalid_argument("heath_brown: identity needs n <= 2U");
}
inline bool short_var(std::int64_t m, double U) { return static_cast<double>(m) * static_cast<double>(m) <= 2.0 * U; }
}  // namespace detail

// 2 sum_{m1 = n} mu(m1) - sum_{m1 m2 n1 = n} mu(m1) mu(m2).
inline double heath_brown_mu(std::int64_t n, double U) {
  detail::check_heath_brown(n, U);
  double single = detail::short_var(n, U) ? mobius(static_cast<std::uint64_t>(n)) : 0.0;
  double pair = 0.0;
  for (std::int64_t m1 = 1; m1 <= n && detail::short_var(m1, U); ++m1) {
    if (n % m1) continue;
    const int mu1 = mobius(static_cast<std::uint64_t>(m1));
    if (mu1 == 0) continue;
    const std::int64_t r = n / m1;
    for (std::int64_t m2 = 1; m2 <= r && detail::short_var(m2, U); ++m2) {
      if (r % m2) continue;
      pair += mu1 * mobius(static_cast<std::uint64_t>(m2));  // n1 = r / m2
    }
  }
  return 2.0 * single - pair;
}

// 2 sum_{m1 n1 = n} mu(m1) log n1 - sum_{m1 m2 n1 n2 = n} mu(m1) mu(m2) log n2.
inline double heath_brown_lambda(std::int64_t n, double U) {
  detail::check_heath_brown(n, U);
  CompensatedSum<double> single, pair;
  for (std::int64_t m1 = 1; m1 <= n && detail::short_var(m1, U); ++m1) {
    if (n % m1) continue;
    const int mu1 = mobius(static_cast<std::uint64_t>(m1));
    if (mu1 == 0) continue;
    const std::int64_t r = n / m1;
    single.add(mu1 * std::log(static_cast<double>(r)));
    for (std::int64_t m2 = 1; m2 <= r && detail::short_var(m2, U); ++m2) {
      if (r % m2) continue;
      const int mu2 = mobius(static_cast<std::uint64_t>(m2));
      if (mu2 == 0) continue;
      const std::int64_t q = r / m2;
      for (std::int64_t n1 = 1; n1 <= q; ++n1) {
        if (q % n1) continue;
        pair.add(mu1 * mu2 * std::log(static_cast<double>(q / n1)));
      }
    }
  }
  return 2.0 * single.value() - pair.value();
}

// ---------------------------------------------------------------------------
// Type I / Type II range split.

enum class SplitKind { type_I, type_II };

inline std::string to_string(SplitKind k) { return k == SplitKind::type_I ? "type_I" : "type_II"; }

struct RangeSplit {
  SplitKind decision = SplitKind::type_I;
  std::vector<std::size_t> subset;  // 0-based indices
  double product = 0.0;             // product of X_i over the subset
  double slack = 1.0;               // the explicit constant 2^{#ranges}
  double lower = 0.0;               // inequality certified: lower <= product
  double upper = 0.0;               // and product <= upper (type_II only)
};

// Case analysis: a single large range gives Type I; otherwise a single
// mid-sized range or the minimal prefix whose product clears W gives Type II.
inline RangeSplit type_split(const std::vector<double>& X, double U, double W) {
  const std::size_t r = X.size();
  if (r == 0) throw std::invalid_argument("type_split: no ranges");
  if (r > 60) throw std::invalid_argument("type_split: too many ranges");
  const double C = std::ldexp(1.0, static_cast<int>(r));
  if (!(U >= 1.0) || !(W >= 1.0)) throw std::invalid_argument("type_split: need U, W >= 1");
  if (W > std::cbrt(U) * C) throw std::invalid_argument("type_split: W above U^{1/3} 2^{#ranges}");
  double prod = 1.0;
  for (double x : X) {
    if (!(x >= 1.0)) throw std::invalid_argument("type_split: ranges must be >= 1");
    prod *= x;
  }
  if (prod < U / C || prod > 2.0 * U) throw std::invalid_argument("type_split: product outside [U/2^r, 2U]");
  if (r % 4 == 3) {
    const std::size_t mobius_vars = (r + 1) / 2;  // 2s + 2 of 4s + 3
    for (std::size_t i = 0; i < mobius_vars; ++i)
      if (X[i] > std::sqrt(2.0 * U)) throw std::invalid_argument("type_split: short variable above (2U)^{1/2}");
  }

  RangeSplit out;
  out.slack = C;
  for (std::size_t i = 0; i < r; ++i) {
    if (X[i] >= U / (C * W)) {
      out.decision = SplitKind::type_I;
      out.subset = {i};
      out.product = X[i];
      out.lower = U / (C * W);
      out.upper = 2.0 * U;
      return out;
    }
  }
  out.decision = SplitKind::type_II;
  out.lower = W / C;
  out.upper = C * U / W;
  for (std::size_t i = 0; i < r; ++i) {
    if (X[i] >= W / C) {
      out.subset = {i};
      out.product = X[i];
      return out;
    }
  }
  double p = 1.0;
  for (std::size_t i = 0; i < r; ++i) {
    p *= X[i];
    out.subset.push_back(i);
    if (p >= W / C) {
      out.product = p;
      return out;
    }
  }
  throw std::invalid_argument("type_split: no admissible subset (U below W)");
}

// ---------------------------------------------------------------------------
// Bilinear and trilinear Kloosterman-fraction sums.

struct RatioReport {
  double lhs = 0.0;  // absolute value of the left side
  double rhs = 0.0;  // reference shape with epsilon = 0
  double ratio = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {
inline double l2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}
}  // namespace detail

// sum_{a ~ A} sum_{m ~ M, n ~ N, (m,n) = 1} nu_a alpha_m beta_n e(a mbar / n), where
// x ~ X means X <= x < 2X; entry k of each array is the coefficient of X + k.
// Moduli n = 1 carry no Kloosterman fraction and are excluded.
inline RatioReport bilinear_sum_measure(const std::vector<double>& nu, const std::vector<double>& alpha,
                                        const std::vector<double>& beta, std::int64_t A, std::int64_t M,
                                        std::int64_t N) {
  if (A < 1 || M < 1 || N < 1) throw std::invalid_argument("bilinear_sum_measure: block sizes must be >= 1");
  if (A > 2000 || M > 2000 || N > 2000) throw std::invalid_argument("bilinear_sum_measure: block sizes above 2000");
  if (nu.size() != static_cast<std::size_t>(A) || alpha.size() != static_cast<std::size_t>(M) ||
      beta.size() != static_cast<std::size_t>(N))
    throw std::invalid_argument("bilinear_sum_measure: coefficient arrays must match block sizes");
  CompensatedSum<cplx> acc;
  std::vector<cplx> roots;
  for (std::int64_t n = std::max<std::int64_t>(N, 2); n < 2 * N; ++n) {
    const double bn = beta[static_cast<std::size_t>(n - N)];
    if (bn == 0.0) continue;
    roots.resize(static_cast<std::size_t>(n));
    for (std::int64_t k = 0; k < n; ++k) {
      const double ang = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
      roots[static_cast<std::size_t>(k)] = {std::cos(ang), std::sin(ang)};
    }
    for (std::int64_t m = M; m < 2 * M; ++m) {
      const double am = alpha[static_cast<std::size_t>(m - M)];
      if (am == 0.0 || std::gcd(m, n) != 1) continue;
      const std::int64_t mbar = mod_inverse(m, n);
      cplx inner = 0.0;
      for (std::int64_t a = A; a < 2 * A; ++a) {
        const double na = nu[static_cast<std::size_t>(a - A)];
        if (na == 0.0) continue;
        inner += na * roots[static_cast<std::size_t>((a % n) * mbar % n)];
      }
      acc.add(am * bn * inner);
    }
  }
  RatioReport r;
  r.lhs = std::abs(acc.value());
  const double a = static_cast<double>(A), m = static_cast<double>(M), n = static_cast<double>(N);
  const double amn = a * m * n;
  r.rhs = detail::l2(nu) * detail::l2(alpha) * detail::l2(beta) * std::sqrt(1.0 + a / (m * n)) *
          (std::pow(amn, 7.0 / 20.0) * std::pow(m + n, 0.25) + std::pow(amn, 3.0 / 8.0) * std::pow(a * n + a * m, 0.125));
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
  return r;
}

// sum_{v <= V, b <= B, (b rho, v) = 1} | sum_{n <= N} sum_{a <= A, (a,v) = 1} c(a,n) e(n conj(rho a b) / v) |.
// c is row-major with c[(a-1) N + (n-1)].
inline RatioReport trilinear_sum_measure(const std::vector<cplx>& c, std::int64_t A, std::int64_t B, std::int64_t N,
                                         std::int64_t V, std::int64_t rho) {
  if (A < 1 || B < 1 || N < 1 || V < 1 || rho < 1) throw std::invalid_argument("trilinear_sum_measure: sizes must be >= 1");
  if (A > 500 || B > 500 || N > 500 || V > 500) throw std::invalid_argument("trilinear_sum_measure: block sizes above 500");
  if (c.size() != static_cast<std::size_t>(A * N)) throw std::invalid_argument("trilinear_sum_measure: c must have A*N entries");
  for (const cplx& z : c)
    if (std::abs(z) > 1.0 + 1e-12) throw std::invalid_argument("trilinear_sum_measure: |c(a,n)| must be <= 1");
  CompensatedSum<double> acc;
  std::vector<cplx> roots;
  for (std::int64_t v = 1; v <= V; ++v) {
    roots.resize(static_cast<std::size_t>(v));
    for (std::int64_t k = 0; k < v; ++k) {
      const double ang = kTwoPi * static_cast<double>(k) / static_cast<double>(v);
      roots[static_cast<std::size_t>(k)] = {std::cos(ang), std::sin(ang)};
    }
    for (std::int64_t b = 1; b <= B; ++b) {
      if (std::gcd(b * rho, v) != 1) continue;
      cplx inner = 0.0;
      for (std::int64_t a = 1; a <= A; ++a) {
        if (std::gcd(a, v) != 1) continue;
        const std::int64_t inv = v == 1 ? 0 : mod_inverse((rho % v) * (a % v) % v * (b % v) % v, v);
        for (std::int64_t n = 1; n <= N; ++n) {
          inner += c[static_cast<std::size_t>((a - 1) * N + (n - 1))] * roots[static_cast<std::size_t>((n % v) * inv % v)];
        }
      }
      acc.add(std::abs(inner));
    }
  }
  RatioReport r;
  r.lhs = acc.value();
  const double a = static_cast<double>(A), b = static_cast<double>(B), n = static_cast<double>(N),
               v = static_cast<double>(V), q = static_cast<double>(rho);
  const double inner = b * v * (n + q * a) * (v + q * a * a) + q * a * a * b * b * n;
  r.rhs = std::sqrt(a * b * n * v) * (std::sqrt(b * v) + std::pow(a + n, 0.25) * std::pow(inner, 0.25));
  r.ratio = r.lhs / r.rhs;
  return r;
}

// Per-trial seed derived from a master seed (splitmix64 step).
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Random +-1 coefficients at A = M = N = size; one report per trial.
inline std::vector<RatioReport> bilinear_campaign(std::int64_t size, std::size_t trials, std::uint64_t master_seed,
                                                  Parallelism par = {}) {
  return map_chunks<RatioReport>(trials, par, [&](std::size_t i) {
    const std::uint64_t seed = trial_seed(master_seed, i);
    std::mt19937_64 rng(seed);
    auto sign = [&] { return (rng() & 1) ? 1.0 : -1.0; };
    std::vector<double> nu(size), al(size), be(size);
    for (auto& x : nu) x = sign();
    for (auto& x : al) x = sign();
    for (auto& x : be) x = sign();
    RatioReport r = bilinear_sum_measure(nu, al, be, size, size, size);
    r.seed = seed;
    return r;
  });
}

// Random unimodular c(a,n) at A = B = N = V = size.
inline std::vector<RatioReport> trilinear_campaign(std::int64_t size, std::int64_t rho, std::size_t trials,
                                                   std::uint64_t master_seed, Parallelism par = {}) {
  return map_chunks<RatioReport>(trials, par, [&](std::size_t i) {
    const std::uint64_t seed = trial_seed(master_seed, i);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    std::vector<cplx> c(static_cast<std::size_t>(size * size));
    for (auto& z : c) z = std::polar(1.0, ang(rng));
    RatioReport r = trilinear_sum_measure(c, size, size, size, size, rho);
    r.seed = seed;
    return r;
  });
}

}  // namespace zmoment
