#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "zmoment/detail/constants_data.hpp"
#include "zmoment/numeric.hpp"
#include "zmoment/series.hpp"

namespace zmoment {

// Pair of real shifts (alpha, beta). When log_scale > 0 the shifts are checked
// against |alpha| log_scale <= 10 and |beta| log_scale <= 10.
struct ShiftPair {
  double alpha = 0.0;
  double beta = 0.0;
  double log_scale = 0.0;

  ShiftPair() = default;
  ShiftPair(double a, double b, double L = 0.0) : alpha(a), beta(b), log_scale(L) {
    if (L < 0.0) throw std::invalid_argument("ShiftPair: negative log_scale");
    if (L > 0.0 && (std::abs(a) * L > 10.0 || std::abs(b) * L > 10.0))
      throw std::invalid_argument("ShiftPair: |shift| * log_scale exceeds 10");
    if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("ShiftPair: non-finite shift");
  }
  double sum() const { return alpha + beta; }
  ShiftPair reflected() const { return ShiftPair(-beta, -alpha, log_scale); }
};

// ---------------------------------------------------------------------------
// Gamma function.

namespace detail {

// B_{2k}, k = 1..15.
inline constexpr double kBernoulli2k[15] = {
    1.0 / 6.0,          -1.0 / 30.0,         1.0 / 42.0,           -1.0 / 30.0,
    5.0 / 66.0,         -691.0 / 2730.0,     7.0 / 6.0,            -3617.0 / 510.0,
    43867.0 / 798.0,    -174611.0 / 330.0,   854513.0 / 138.0,     -236364091.0 / 2730.0,
    8553103.0 / 6.0,    -23749461029.0 / 870.0, 8615841276005.0 / 14322.0};

inline cplx stirling_log_gamma(cplx z) {
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx pw = inv;
  for (int k = 1; k <= 8; ++k) {
    series += kBernoulli2k[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(kTwoPi) + series;
}

}  // namespace detail

// Analytic continuation of log Gamma(z) from the positive axis.
inline cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real())
    throw std::domain_error("log_gamma: pole at non-positive integer");
  if (z.real() >= 10.0) return detail::stirling_log_gamma(z);
  const int shift = static_cast<int>(std::ceil(10.0 - z.real()));
  cplx logs = 0.0;
  for (int k = 0; k < shift; ++k) logs += std::log(z + static_cast<double>(k));
  return detail::stirling_log_gamma(z + static_cast<double>(shift)) - logs;
}

// Riemann-Siegel theta function.
inline double siegel_theta(double t) {
  const double at = std::abs(t);
  double th;
  if (at >= 100.0) {
    const double r = 1.0 / at, r2 = r * r;
    th = 0.5 * at * std::log(at / kTwoPi) - 0.5 * at - kPi / 8.0 +
         r * (1.0 / 48.0 + r2 * (7.0 / 5760.0 + r2 * (31.0 / 80640.0 + r2 * (127.0 / 430080.0))));
  } else {
    th = log_gamma(cplx(0.25, 0.5 * at)).imag() - 0.5 * at * std::log(kPi);
  }
  return t < 0 ? -th : th;
}

// log sin(z), stable for large |Im z| (branch chosen arbitrarily).
inline cplx log_sin(cplx z) {
  const cplx i(0.0, 1.0);
  if (z.imag() >= 0.0) return -i * z + std::log(std::exp(2.0 * i * z) - 1.0) - std::log(2.0 * i);
  return i * z + std::log(1.0 - std::exp(-2.0 * i * z)) - std::log(2.0 * i);
}

// chi(s) with zeta(s) = chi(s) zeta(1 - s).
inline cplx chi(cplx s) {
  return std::exp(s * std::log(2.0) + (s - 1.0) * std::log(kPi) + log_sin(0.5 * kPi * s) +
                  log_gamma(1.0 - s));
}

// ---------------------------------------------------------------------------
// Riemann zeta.

struct ZetaValue {
  cplx value;
  double error_estimate = 0.0;  // absolute
  bool degraded = false;
  std::string method;
};

struct ZetaConfig {
  double t_switch = 1.0e4;
  int bernoulli_terms = 15;
  int extra_terms = 20;
  double em_target = 1e-8;
  double rs_target = 1e-4;
  // Targets are relative to max(1, |zeta|) so isolated zeros do not trip them.
};

namespace detail {

inline double cached_log(std::size_t n) {
  static const std::vector<double> table = [] {
    std::vector<double> v(1 << 16);
    v[0] = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k) v[k] = std::log(static_cast<double>(k));
    return v;
  }();
  return n < table.size() ? table[n] : std::log(static_cast<double>(n));
}

inline double cached_rsqrt(std::size_t n) {
  static const std::vector<double> table = [] {
    std::vector<double> v(1 << 13);
    v[0] = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k) v[k] = 1.0 / std::sqrt(static_cast<double>(k));
    return v;
  }();
  return n < table.size() ? table[n] : 1.0 / std::sqrt(static_cast<double>(n));
}

// Euler-Maclaurin with n_terms - 1 explicit terms and m Bernoulli corrections.
inline ZetaValue zeta_euler_maclaurin(cplx s, std::size_t n_terms, int m) {
  CompensatedSum<cplx> acc;
  double magnitude = 0.0;
  for (std::size_t n = 1; n < n_terms; ++n) {
    const cplx term = std::exp(-s * cached_log(n));
    acc.add(term);
    magnitude += std::abs(term);
  }
  const double N = static_cast<double>(n_terms);
  const double logN = std::log(N);
  const cplx Ns = std::exp(-s * logN);
  acc.add(Ns * N / (s - 1.0));
  acc.add(0.5 * Ns);
  // B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  cplx rising = s;
  cplx pw = Ns / N;
  double fact = 2.0;
  cplx last = 0.0;
  for (int k = 1; k <= m; ++k) {
    const cplx term = kBernoulli2k[k - 1] / fact * rising * pw;
    acc.add(term);
    last = term;
    rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
    pw /= N * N;
    fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  ZetaValue out;
  out.value = acc.value();
  out.error_estimate = std::abs(last) + 4e-16 * magnitude;
  out.method = "euler_maclaurin";
  return out;
}

inline double horner(const double* c, std::size_t n, double x) {
  double acc = 0.0;
  for (std::size_t k = n; k-- > 0;) acc = acc * x + c[k];
  return acc;
}

// Hardy's Z(t) for t > 0 by Riemann-Siegel with corrections C0..C3.
inline double riemann_siegel_z(double t, double* error_estimate) {
  const double tau = t / kTwoPi;
  const double a = std::sqrt(tau);
  const auto nu = static_cast<std::size_t>(std::floor(a));
  const double p = a - static_cast<double>(nu);
  const double th = siegel_theta(t);
  CompensatedSum<double> main;
  for (std::size_t n = 1; n <= nu; ++n) main.add(cached_rsqrt(n) * std::cos(th - t * cached_log(n)));
  const double x = p - 0.5;
  const double r = 1.0 / a;
  const double c0 = horner(kRsC0, std::size(kRsC0), x);
  const double c1 = horner(kRsC1, std::size(kRsC1), x);
  const double c2 = horner(kRsC2, std::size(kRsC2), x);
  const double c3 = horner(kRsC3, std::size(kRsC3), x);
  const double rem = c0 + r * (c1 + r * (c2 + r * c3));
  const double sign = (nu % 2 == 1) ? 1.0 : -1.0;  // (-1)^(nu-1)
  const double scale = std::pow(tau, -0.25);
  if (error_estimate) *error_estimate = scale * std::pow(r, 4) * 0.01 + 1e-15 * a;
  return 2.0 * main.value() + sign * scale * rem;
}

}  // namespace detail

inline double hardy_z(double t) {
  if (t < 0) return hardy_z(-t);
  if (t < 200.0) throw std::invalid_argument("hardy_z: Riemann-Siegel path needs t >= 200");
  return detail::riemann_siegel_z(t, nullptr);
}

inline ZetaValue zeta(cplx s, const ZetaConfig& cfg = {}) {
  if (s == cplx(1.0, 0.0)) throw std::domain_error("zeta: pole at s = 1");
  if (std::abs(s.imag()) > 1e7) throw std::invalid_argument("zeta: |Im s| above 1e7");
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw std::invalid_argument("zeta: non-finite s");
  const double t = s.imag();
  if (s.real() == 0.5 && std::abs(t) > cfg.t_switch) {
    double err = 0.0;
    const double at = std::abs(t);
    const double z = detail::riemann_siegel_z(at, &err);
    const double th = siegel_theta(at);
    cplx v = z * std::exp(cplx(0.0, -th));
    if (t < 0) v = std::conj(v);
    ZetaValue out{v, err, false, "riemann_siegel"};
    out.degraded = err > cfg.rs_target * std::max(1.0, std::abs(v));
    return out;
  }
  if (s.real() < -20.0) throw std::invalid_argument("zeta: Re s below -20 is not supported");
  const auto n_terms = static_cast<std::size_t>(std::ceil(std::abs(t) / kPi)) +
                       static_cast<std::size_t>(cfg.extra_terms) +
                       static_cast<std::size_t>(std::max(0.0, std::ceil(-s.real())));
  ZetaValue out = detail::zeta_euler_maclaurin(s, n_terms, cfg.bernoulli_terms);
  out.degraded = out.error_estimate > cfg.em_target * std::max(1.0, std::abs(out.value));
  return out;
}

// ---------------------------------------------------------------------------
// Laurent expansion of zeta(1 + s).

inline constexpr int kStieltjesCount = static_cast<int>(std::size(detail::kStieltjes));

inline double stieltjes_constant(int k) {
  if (k < 0 || k >= kStieltjesCount) throw std::invalid_argument("stieltjes_constant: index out of range");
  return detail::kStieltjes[k];
}

// Taylor coefficients of zeta(1+s) - 1/s about s = s0, through degree `order`.
inline Series zeta_regular_taylor(double s0, int order) {
  if (order < 0 || order >= kStieltjesCount) throw std::invalid_argument("zeta_regular_taylor: order too large");
  Series out(order);
  for (int j = 0; j <= order; ++j) {
    double acc = 0.0;
    double pw = 1.0;  // s0^(k-j)
    for (int k = j; k < kStieltjesCount; ++k) {
      const double term = ((k % 2) ? -1.0 : 1.0) * detail::kStieltjes[k] / factorial(k) * binomial(k, j) * pw;
      acc += term;
      pw *= s0;
    }
    out[j] = acc;
  }
  return out;
}

// zeta(1 + s(x)) for a truncated series s(x), valid through x^order.
// The offset is treated as a polynomial (coefficients past its order are 0).
inline LaurentSeries zeta_laurent_jet(const Series& s_offset, int order) {
  if (order < 0 || order + 1 >= kStieltjesCount)
    throw std::invalid_argument("zeta_laurent_jet: order exceeds stored Stieltjes constants");
  const Series s = Series(std::vector<double>(s_offset.coeffs())).truncated(order + 2);
  const double s0 = s[0];
  if (s0 != 0.0) {
    if (std::abs(s0) > 3.0) throw std::invalid_argument("zeta_laurent_jet: |constant term| above 3");
    Series f = zeta_regular_taylor(s0, order);
    for (int j = 0; j <= order; ++j) f[j] += ((j % 2) ? -1.0 : 1.0) / std::pow(s0, j + 1);
    Series u = s.truncated(order);
    u[0] = 0.0;
    return LaurentSeries(0, f.compose(u));
  }
  if (s[1] == 0.0) throw std::invalid_argument("zeta_laurent_jet: offset has no constant or linear part");
  // s = x r(x): zeta(1+s) = x^{-1} [1/r(x) + x zeta_reg(s(x))]
  const Series inv = s.shift_down().reciprocal();  // order + 1 terms past the pole
  Series body(order + 1);
  for (int k = 0; k <= order + 1; ++k) body[k] = inv[k];
  const Series reg = zeta_regular_taylor(0.0, order).compose(s.truncated(order));
  for (int k = 0; k <= order; ++k) body[k + 1] += reg[k];
  return LaurentSeries(-1, body).normalized();
}

// ---------------------------------------------------------------------------
// AFE kernels.

// G(s) = e^{s^2} ((a+b)^2 - 4 s^2)/(a+b)^2. Undefined for a + b = 0.
inline cplx G(cplx s, const ShiftPair& shifts) {
  const double sig = shifts.sum();
  if (sig == 0.0) throw std::invalid_argument("G: alpha + beta = 0 has no pointwise value");
  return std::exp(s * s) * (sig * sig - 4.0 * s * s) / (sig * sig);
}

// Kernel used inside the approximate functional equation: G when a + b != 0,
// and the plain e^{s^2} when the pole annihilator degenerates.
inline cplx afe_kernel(cplx s, const ShiftPair& shifts) {
  if (shifts.sum() == 0.0) return std::exp(s * s);
  return G(s, shifts);
}

struct ContourConfig {
  double abscissa = 2.0;
  double step = 0.125;
  double height = 12.0;
};

namespace detail {

// (1/2 pi i) int_{(c)} F(w) dw by the trapezoid rule.
template <typename Fn>
cplx vertical_line_integral(Fn&& F, double c, const ContourConfig& cfg) {
  if (!(cfg.step > 0.0) || !(cfg.height > 0.0)) throw std::invalid_argument("ContourConfig: step and height must be positive");
  const auto K = static_cast<long>(std::ceil(cfg.height / cfg.step));
  CompensatedSum<cplx> acc;
  for (long k = -K; k <= K; ++k) acc.add(F(cplx(c, k * cfg.step)));
  return acc.value() * (cfg.step / kTwoPi);
}

}  // namespace detail

inline double W(double x, const ShiftPair& shifts, const ContourConfig& cfg = {}) {
  if (!(x > 0.0)) throw std::invalid_argument("W: x must be positive");
  const double lx = std::log(x);
  const double c = std::abs(cfg.abscissa);
  auto F = [&](cplx w) { return std::exp(-w * lx) * afe_kernel(w, shifts) / w; };
  if (lx >= 0.0) return detail::vertical_line_integral(F, c, cfg).real();
  return 1.0 + detail::vertical_line_integral(F, -c, cfg).real();
}

namespace detail {
inline void check_t(double t) {
  if (!(t >= 10.0)) throw std::invalid_argument("t must be >= 10");
}
}  // namespace detail

// log of the Gamma ratio in g_{alpha,beta}(s,t), without the pi^{-s} factor.
class GammaRatio {
 public:
  GammaRatio(double t, const ShiftPair& shifts) : t_(t), sh_(shifts) {
    detail::check_t(t);
    denom_ = log_gamma(cplx(0.5 + sh_.alpha, t) / 2.0) + log_gamma(cplx(0.5 + sh_.beta, -t) / 2.0);
  }
  cplx log_g(cplx s) const {
    return -s * std::log(kPi) + log_gamma((cplx(0.5 + sh_.alpha, t_) + s) / 2.0) +
           log_gamma((cplx(0.5 + sh_.beta, -t_) + s) / 2.0) - denom_;
  }

 private:
  double t_;
  ShiftPair sh_;
  cplx denom_;
};

inline cplx g_shift(cplx s, double t, const ShiftPair& shifts) {
  return std::exp(GammaRatio(t, shifts).log_g(s));
}

inline cplx X_factor(double t, const ShiftPair& shifts) {
  detail::check_t(t);
  const double a = shifts.alpha, b = shifts.beta;
  return std::exp((a + b) * std::log(kPi) + log_gamma(cplx(0.5 - a, -t) / 2.0) +
                  log_gamma(cplx(0.5 - b, t) / 2.0) - log_gamma(cplx(0.5 + a, t) / 2.0) -
                  log_gamma(cplx(0.5 + b, -t) / 2.0));
}

// V_{alpha,beta}(x, t) precomputed along the contour so that many x values
// can be evaluated cheaply: V(x) = sum_k w_k x^{-s_k} (+1 on the left line).
class VKernel {
 public:
  VKernel(double t, const ShiftPair& shifts, const ContourConfig& cfg = {})
      : log_t_over_2pi_(std::log(t / kTwoPi)) {
    detail::check_t(t);
    const GammaRatio ratio(t, shifts);
    const double c = std::abs(cfg.abscissa);
    const auto K = static_cast<long>(std::ceil(cfg.height / cfg.step));
    for (int side = 0; side < 2; ++side) {
      auto& nodes = side == 0 ? right_ : left_;
      const double re = side == 0 ? c : -c;
      for (long k = -K; k <= K; ++k) {
        const cplx s(re, k * cfg.step);
        const cplx w = afe_kernel(s, shifts) / s * std::exp(ratio.log_g(s)) * (cfg.step / kTwoPi);
        nodes.push_back({s, w});
      }
    }
  }

  cplx operator()(double x) const { return at_log(std::log(x)); }

  cplx at_log(double log_x) const {
    const bool right = log_x >= log_t_over_2pi_;  // 2 pi x / t >= 1
    const auto& nodes = right ? right_ : left_;
    CompensatedSum<cplx> acc;
    for (const auto& nd : nodes) acc.add(nd.weight * std::exp(-nd.s * log_x));
    return right ? acc.value() : 1.0 + acc.value();
  }

 private:
  struct Node {
    cplx s;
    cplx weight;
  };
  double log_t_over_2pi_;
  std::vector<Node> right_, left_;
};

inline cplx V_shift(double x, double t, const ShiftPair& shifts, const ContourConfig& cfg = {}) {
  if (!(x > 0.0)) throw std::invalid_argument("V_shift: x must be positive");
  return VKernel(t, shifts, cfg)(x);
}

// Lagrange interpolation of V on a uniform grid in log x, used by the AFE sums.
class VTable {
 public:
  VTable(const VKernel& kernel, double log_x_max, double step = 1.0 / 64.0)
      : step_(step) {
    const auto n = static_cast<std::size_t>(std::ceil(log_x_max / step)) + 8;
    values_.resize(n + 3);
    for (std::size_t k = 0; k < values_.size(); ++k)
      values_[k] = kernel.at_log((static_cast<double>(k) - 2.0) * step);
  }

  // Six-point Lagrange interpolation at log x >= 0.
  cplx at_log(double log_x) const {
    const double u = log_x / step_ + 2.0;
    auto i = static_cast<std::size_t>(u);
    if (i < 2) i = 2;
    if (i + 3 >= values_.size()) i = values_.size() - 4;
    const double f = u - static_cast<double>(i);
    // nodes at offsets -2..3; denominators prod_{b != a} (a - b)
    static constexpr double kDen[6] = {-120.0, 24.0, -12.0, 12.0, -24.0, 120.0};
    double d[6], pre[7], suf[7];
    for (int a = 0; a < 6; ++a) d[a] = f - (a - 2);
    pre[0] = 1.0;
    suf[6] = 1.0;
    for (int a = 0; a < 6; ++a) pre[a + 1] = pre[a] * d[a];
    for (int a = 5; a >= 0; --a) suf[a] = suf[a + 1] * d[a];
    double w[6];
    for (int a = 0; a < 6; ++a) w[a] = pre[a] * suf[a + 1] / kDen[a];
    cplx acc = 0.0;
    for (int a = 0; a < 6; ++a) acc += w[a] * values_[i - 2 + a];
    return acc;
  }

 private:
  double step_;
  std::vector<cplx> values_;
};

// ---------------------------------------------------------------------------
// Smooth weight and partition of unity.

// Phi(x) = exp(1 - 1/(1 - (2x-3)^2)) on (1,2), zero elsewhere.
inline double bump(double x) {
  if (!(x > 1.0 && x < 2.0)) return 0.0;
  const double u = 2.0 * x - 3.0;
  const double d = 1.0 - u * u;
  if (d <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / d);
}

// int_1^2 x^w (log x)^k Phi(x) dx.
inline double bump_log_moment(double w, int k) {
  if (k < 0) throw std::invalid_argument("bump_log_moment: k must be >= 0");
  auto f = [&](double x) {
    const double lx = std::log(x);
    return std::exp(w * lx) * std::pow(lx, k) * bump(x);
  };
  return integrate_adaptive(f, 1.0, 2.0, 1e-15, 1e-13).value;
}

inline double bump_integral(double weight_exponent) { return bump_log_moment(weight_exponent, 0); }

// Taylor series of eps -> int x^{w0 + sign eps} Phi(x) dx.
inline Series bump_integral_series(double w0, double sign, int order) {
  Series s(order);
  for (int k = 0; k <= order; ++k) s[k] = std::pow(sign, k) * bump_log_moment(w0, k) / factorial(k);
  return s;
}

namespace detail {
inline double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}
// 0 for y <= 1/2, 1 for y >= 1.
inline double rise(double y) { return y <= 0.0 ? 0.0 : smooth_step(std::log2(y) + 1.0); }
}  // namespace detail

// Members F_M(x) = rho(x/M) - rho(x/2M) for M = 2^k, each supported in [M/2, 2M].
class DyadicPartition {
 public:
  DyadicPartition(double lo, double hi) {
    if (!(lo > 0.0 && lo < hi)) throw std::invalid_argument("dyadic_partition: need 0 < lo < hi");
    k_lo_ = static_cast<int>(std::floor(std::log2(lo)));
    k_hi_ = static_cast<int>(std::ceil(std::log2(hi)));
  }

  std::size_t size() const { return static_cast<std::size_t>(k_hi_ - k_lo_ + 1); }
  double scale(std::size_t i) const { return std::ldexp(1.0, k_lo_ + static_cast<int>(i)); }
  std::vector<double> scales() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(scale(i));
    return out;
  }
  double member(std::size_t i, double x) const {
    const double M = scale(i);
    return detail::rise(x / M) - detail::rise(x / (2.0 * M));
  }
  double sum(double x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < size(); ++i) acc += member(i, x);
    return acc;
  }

 private:
  int k_lo_ = 0, k_hi_ = 0;
};

inline DyadicPartition dyadic_partition(double lo, double hi) { return DyadicPartition(lo, hi); }

// ---------------------------------------------------------------------------
// Approximate functional equation check.

struct AfeReport {
  double t = 0.0;
  ShiftPair shifts;
  std::size_t truncation = 0;
  cplx lhs;
  cplx first_sum;
  cplx second_sum;
  cplx x_factor;
  double residual = 0.0;
  double relative = 0.0;
  bool degraded = false;
};

namespace detail {

// sum_{m1 m2 <= X} m1^{-e1} m2^{-e2} V(m1 m2), split at sqrt(X).
inline cplx afe_double_sum(cplx e1, cplx e2, const VTable& V, std::size_t X, Parallelism par) {
  const auto Y = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(X))));
  std::vector<cplx> f1(Y + 1), f2(Y + 1);
  std::vector<double> lg(Y + 1, 0.0);
  for (std::size_t m = 1; m <= Y; ++m) {
    lg[m] = std::log(static_cast<double>(m));
    f1[m] = std::exp(-e1 * lg[m]);
    f2[m] = std::exp(-e2 * lg[m]);
  }
  constexpr std::size_t kChunks = 64;
  auto part = [&](std::size_t chunk) {
    // Outer variable ranges over [lo, hi] of its chunk; both orientations.
    const std::size_t per = (X + kChunks - 1) / kChunks;
    const std::size_t lo = chunk * per + 1;
    const std::size_t hi = std::min(X, (chunk + 1) * per);
    CompensatedSum<cplx> acc;
    for (std::size_t outer = lo; outer <= hi; ++outer) {
      const double lo_log = std::log(static_cast<double>(outer));
      const std::size_t inner_max = std::min(Y, X / outer);
      const cplx g2 = std::exp(-e2 * lo_log);
      const cplx g1 = std::exp(-e1 * lo_log);
      cplx a = 0.0, b = 0.0;
      for (std::size_t inner = 1; inner <= inner_max; ++inner) {
        const cplx v = V.at_log(lo_log + lg[inner]);
        a += f1[inner] * v;  // m1 = inner <= Y, m2 = outer
        b += f2[inner] * v;  // m2 = inner <= Y, m1 = outer
      }
      // Pairs with both variables <= Y appear in both orientations; keep one.
      acc.add(outer <= Y ? g1 * b : g2 * a + g1 * b);
    }
    return acc;
  };
  const auto parts = map_chunks<CompensatedSum<cplx>>(kChunks, par, part);
  CompensatedSum<cplx> total;
  for (const auto& p : parts) total.merge(p);
  return total.value();
}

}  // namespace detail

// Smallest X for which the neglected tail of both AFE sums is below tol, never
// less than t^{5/4}.
inline std::size_t afe_default_truncation(double t, const ShiftPair& shifts, double tol = 1e-7,
                                          const ContourConfig& cfg = {}) {
  const VKernel v1(t, shifts, cfg), v2(t, shifts.reflected(), cfg);
  const double xf = std::abs(X_factor(t, shifts));
  const double shift = std::max(std::abs(shifts.alpha), std::abs(shifts.beta));
  double lx = std::log(t / kTwoPi);
  for (; lx < 60.0; lx += 0.125) {
    const double x = std::exp(lx);
    // sum over m1 m2 > x of (m1 m2)^{-1/2 + |shift|} |V|, with about log x pairs per unit
    const double tail = 2.0 * std::pow(x, 0.5 + shift) * (lx + 1.0) *
                        std::max(std::abs(v1.at_log(lx)), xf * std::abs(v2.at_log(lx)));
    if (tail < tol) break;
  }
  const double X = std::max(std::exp(lx), std::ceil(std::pow(t, 1.25)));
  return static_cast<std::size_t>(std::ceil(X));
}

inline AfeReport afe_residual(double t, const ShiftPair& shifts, std::size_t truncation,
                              Parallelism par = {}, const ContourConfig& cfg = {}) {
  if (!(t >= 50.0 && t <= 5000.0)) throw std::invalid_argument("afe_residual: t must lie in [50, 5000]");
  if (static_cast<double>(truncation) < std::pow(t, 1.25))
    throw std::invalid_argument("afe_residual: truncation below t^{5/4}");
  AfeReport r;
  r.t = t;
  r.shifts = shifts;
  r.truncation = truncation;
  const ZetaValue z1 = zeta(cplx(0.5 + shifts.alpha, t));
  const ZetaValue z2 = zeta(cplx(0.5 + shifts.beta, t));
  r.lhs = z1.value * std::conj(z2.value);
  r.degraded = z1.degraded || z2.degraded;

  const double log_max = std::log(static_cast<double>(truncation)) + 0.1;
  const VKernel k1(t, shifts, cfg);
  const VKernel k2(t, shifts.reflected(), cfg);
  const VTable v1(k1, log_max), v2(k2, log_max);
  const double a = shifts.alpha, b = shifts.beta;
  // m1^{-1/2-a-it} m2^{-1/2-b+it} and m1^{-1/2+b-it} m2^{-1/2+a+it}
  r.first_sum = detail::afe_double_sum(cplx(0.5 + a, t), cplx(0.5 + b, -t), v1, truncation, par);
  r.second_sum = detail::afe_double_sum(cplx(0.5 - b, t), cplx(0.5 - a, -t), v2, truncation, par);
  r.x_factor = X_factor(t, shifts);
  const cplx rhs = r.first_sum + r.x_factor * r.second_sum;
  r.residual = std::abs(r.lhs - rhs);
  r.relative = r.residual / std::abs(r.lhs);
  return r;
}

inline AfeReport afe_residual(double t, const ShiftPair& shifts, Parallelism par = {}) {
  return afe_residual(t, shifts, afe_default_truncation(t, shifts), par);
}

}  // namespace zmoment
