#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zmoment/arith.hpp"
#include "zmoment/mollifier.hpp"
#include "zmoment/numeric.hpp"
#include "zmoment/series.hpp"
#include "zmoment/special.hpp"

namespace zmoment {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidResult : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MomentConfig {
  double pair_budget = 4e9;  // limit on the nominal number of (d, e) pairs
  int jet_order = 12;
  Parallelism par;
};

enum class EvalMode { pointwise, jet };

struct MomentPiece {
  std::string name;
  double value = 0.0;
};

struct MomentReport {
  std::string label;
  double value = 0.0;
  std::vector<MomentPiece> pieces;  // sum to value
  double t_integral = 0.0;          // int Phi(t/T) dt
  std::uint64_t pair_count = 0;
  double summation_residual = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
  double imag_part = 0.0;
  bool degraded = false;
  std::vector<std::pair<std::string, double>> diagnostics;

  double piece(const std::string& name) const {
    for (const auto& p : pieces)
      if (p.name == name) return p.value;
    throw std::out_of_range("MomentReport: no piece " + name);
  }
  double pieces_total() const {
    CompensatedSum<double> s;
    for (const auto& p : pieces) s.add(p.value);
    return s.value();
  }
};

namespace detail {

inline void check_T(double T) {
  if (!(T > 2.0 * kPi) || !std::isfinite(T)) throw std::invalid_argument("T must exceed 2 pi");
}

inline void check_budget(double pairs, const MomentConfig& cfg) {
  if (pairs > cfg.pair_budget)
    throw BudgetExceeded("pair count " + std::to_string(pairs) + " exceeds budget " + std::to_string(cfg.pair_budget));
}

// G[i][j] = sum_h sum_{m <= N/h} sum_{n <= K/h, (m,n) = 1} a_{hm} b_{hn} / (h m n)
//           * m^{eu} n^{ev} (log m)^i / i! (log n)^j / j!
// for 0 <= i <= order_m, 0 <= j <= order_n. Coprimality by Moebius over the
// squarefree divisors of m.
struct PairGrid {
  int order_m = 0, order_n = 0;
  std::vector<double> g;
  double residual = 0.0;
  double at(int i, int j) const { return g[static_cast<std::size_t>(i) * (order_n + 1) + j]; }
};

inline PairGrid coprime_pair_grid(const CoefficientTable& a, const CoefficientTable& b, double eu, double ev,
                                  int order_m, int order_n, Parallelism par) {
  const std::size_t N = a.length(), K = b.length();
  const std::size_t H = std::min(N, K);
  const std::size_t J = static_cast<std::size_t>(order_n) + 1, I = static_cast<std::size_t>(order_m) + 1;
  const auto spf = smallest_prime_factors(std::max(N, K));
  std::vector<double> logs(std::max(N, K) + 1, 0.0);
  for (std::size_t n = 1; n < logs.size(); ++n) logs[n] = std::log(static_cast<double>(n));
  std::vector<double> inv_fact(std::max(I, J) + 1, 1.0);
  for (std::size_t k = 1; k < inv_fact.size(); ++k) inv_fact[k] = inv_fact[k - 1] / static_cast<double>(k);

  // Fixed decomposition over h, independent of the thread count.
  const auto ranges = balanced_ranges(1, H, 32, [&](std::size_t h) {
    return static_cast<double>(N / h + K / h) + 1.0;
  });

  struct Partial {
    std::vector<CompensatedSum<double>> g;
  };
  auto work = [&](std::size_t chunk) {
    Partial out;
    out.g.resize(I * J);
    std::vector<CompensatedSum<double>> U;
    std::vector<double> v(J), wm(I), pw(J);
    std::vector<std::pair<std::size_t, int>> divs;
    for (std::size_t h = ranges[chunk].first; h <= ranges[chunk].second; ++h) {
      const std::size_t Mh = N / h, Kh = K / h;
      const double inv_h = 1.0 / static_cast<double>(h);
      // U[g][j] = sum_{g | n <= Kh} b_{hn} n^{ev - 1} (log n)^j / j!
      U.assign((Kh + 1) * J, CompensatedSum<double>());
      bool any = false;
      for (std::size_t n = 1; n <= Kh; ++n) {
        const double bn = b[h * n];
        if (bn == 0.0) continue;
        any = true;
        const double base = bn * std::exp((ev - 1.0) * logs[n]);
        double lp = 1.0;
        for (std::size_t j = 0; j < J; ++j) {
          pw[j] = base * lp * inv_fact[j];
          lp *= logs[n];
        }
        // add to every squarefree divisor g of n
        divs.clear();
        divs.emplace_back(1, 1);
        for (std::size_t r = n; r > 1;) {
          const std::size_t p = spf[r];
          while (r % p == 0) r /= p;
          const std::size_t s = divs.size();
          for (std::size_t k = 0; k < s; ++k) divs.emplace_back(divs[k].first * p, -divs[k].second);
        }
        for (const auto& [g, sg] : divs) {
          for (std::size_t j = 0; j < J; ++j) U[g * J + j].add(pw[j]);
        }
      }
      if (!any) continue;
      for (std::size_t m = 1; m <= Mh; ++m) {
        const double am = a[h * m];
        if (am == 0.0) continue;
        std::fill(v.begin(), v.end(), 0.0);
        divs.clear();
        divs.emplace_back(1, 1);
        for (std::size_t r = m; r > 1;) {
          const std::size_t p = spf[r];
          while (r % p == 0) r /= p;
          const std::size_t s = divs.size();
          for (std::size_t k = 0; k < s; ++k) divs.emplace_back(divs[k].first * p, -divs[k].second);
        }
        for (const auto& [g, sg] : divs) {
          if (g > Kh) continue;
          for (std::size_t j = 0; j < J; ++j) v[j] += sg * U[g * J + j].value();
        }
        const double base = am * inv_h * std::exp((eu - 1.0) * logs[m]);
        double lp = 1.0;
        for (std::size_t i = 0; i < I; ++i) {
          wm[i] = base * lp * inv_fact[i];
          lp *= logs[m];
        }
        for (std::size_t i = 0; i < I; ++i)
          for (std::size_t j = 0; j < J; ++j) out.g[i * J + j].add(wm[i] * v[j]);
      }
    }
    return out;
  };
  const auto parts = map_chunks<Partial>(ranges.size(), par, work);
  PairGrid grid;
  grid.order_m = order_m;
  grid.order_n = order_n;
  grid.g.assign(I * J, 0.0);
  for (std::size_t k = 0; k < I * J; ++k) {
    CompensatedSum<double> s;
    for (const auto& p : parts) s.merge(p.g[k]);
    grid.g[k] = s.value();
    grid.residual = std::max(grid.residual, s.residual());
  }
  return grid;
}

// S_plus(alpha, beta) = sum w m^{-alpha} n^{-beta} as a jet at (alpha0, beta0).
inline BivariateJet plus_sum_jet(const CoefficientTable& a, const CoefficientTable& b, double alpha0, double beta0,
                                 int order, Parallelism par, double* residual) {
  const PairGrid g = coprime_pair_grid(a, b, -alpha0, -beta0, order, order, par);
  BivariateJet j(alpha0, beta0, order);
  for (int d = 0; d <= order; ++d)
    for (int i = 0; i <= d; ++i) j.at(i, d - i) = ((d % 2) ? -1.0 : 1.0) * g.at(i, d - i);
  if (residual) *residual = std::max(*residual, g.residual);
  return j;
}

// S_minus(alpha, beta) = sum w m^{beta} n^{alpha} as a jet at (alpha0, beta0).
inline BivariateJet minus_sum_jet(const CoefficientTable& a, const CoefficientTable& b, double alpha0, double beta0,
                                  int order, Parallelism par, double* residual) {
  const PairGrid g = coprime_pair_grid(a, b, beta0, alpha0, order, order, par);
  BivariateJet j(alpha0, beta0, order);
  for (int d = 0; d <= order; ++d)
    for (int i = 0; i <= d; ++i) j.at(i, d - i) = g.at(d - i, i);
  if (residual) *residual = std::max(*residual, g.residual);
  return j;
}

// B(-s0 - eps) (2 pi / T)^{s0 + eps} as a series in eps.
inline Series mirrored_weight_series(double s0, double T, int order) {
  const double ell = std::log(T / kTwoPi);
  return std::exp(-s0 * ell) * (bump_integral_series(-s0, -1.0, order) * Series::exp_linear(-ell, order));
}

inline constexpr double kNearPole = 1e-3;

struct JetResult {
  BivariateJet first;   // zeta(1+s) piece, or the pole-cancelled combination
  BivariateJet second;  // mirrored zeta(1-s) piece, or the regular remainder
  bool pole_split = false;
  double pole_residual = 0.0;
  double sum_residual = 0.0;
  BivariateJet total() const { return first + second; }
};

inline JetResult main_term_jet_impl(const CoefficientTable& a, const CoefficientTable& b, double alpha0, double beta0,
                                    double T, int order, Parallelism par) {
  const double s0 = alpha0 + beta0;
  const double B0 = bump_integral(0.0);
  if (std::abs(s0) > 3.0) throw std::invalid_argument("main_term jet: |alpha + beta| above 3");
  if (s0 != 0.0 && std::abs(s0) < kNearPole) {
    // Expand about the nearest point with alpha + beta = 0, then translate.
    JetResult r = main_term_jet_impl(a, b, alpha0 - s0 / 2, beta0 - s0 / 2, T, order + 8, par);
    r.first = r.first.translated(s0 / 2, s0 / 2).truncated(order).with_base(alpha0, beta0);
    r.second = r.second.translated(s0 / 2, s0 / 2).truncated(order).with_base(alpha0, beta0);
    return r;
  }
  if (s0 != 0.0) {
    double res = 0.0;
    const BivariateJet sp = plus_sum_jet(a, b, alpha0, beta0, order, par, &res);
    const BivariateJet sm = minus_sum_jet(a, b, alpha0, beta0, order, par, &res);
    const Series zp = T * B0 * zeta_laurent_jet(Series::variable(order, s0), order).regular_part(order);
    const Series zm_zeta = zeta_laurent_jet(Series({-s0, -1.0}), order).regular_part(order);
    const Series zm = T * (zm_zeta * mirrored_weight_series(s0, T, order));
    JetResult r{BivariateJet::of_sum(zp, alpha0, beta0, order) * sp,
                BivariateJet::of_sum(zm, alpha0, beta0, order) * sm};
    r.sum_residual = res;
    return r;
  }
  // alpha + beta = 0: zeta(1 + eps) = 1/eps + reg(eps), zeta(1 - eps) = -1/eps + reg(-eps).
  const int up = order + 1;
  double res = 0.0;
  const BivariateJet sp = plus_sum_jet(a, b, alpha0, beta0, up, par, &res);
  const BivariateJet sm = minus_sum_jet(a, b, alpha0, beta0, up, par, &res);
  const Series vser = mirrored_weight_series(0.0, T, up);
  const BivariateJet numerator = B0 * sp - BivariateJet::of_sum(vser, alpha0, beta0, up) * sm;
  double defect = 0.0;
  const BivariateJet pole = numerator.divided_by_sum(&defect);
  Series reg_plus = zeta_regular_taylor(0.0, order);
  Series reg_minus = reg_plus;
  for (int k = 1; k <= order; k += 2) reg_minus[k] = -reg_minus[k];
  const BivariateJet regular =
      BivariateJet::of_sum(B0 * reg_plus, alpha0, beta0, order) * sp.truncated(order) +
      BivariateJet::of_sum(reg_minus * vser.truncated(order), alpha0, beta0, order) * sm.truncated(order);
  JetResult r{T * pole, T * regular};
  r.pole_split = true;
  r.pole_residual = T * defect;
  r.sum_residual = res;
  return r;
}

inline std::uint64_t nominal_pairs(const CoefficientTable& a, const CoefficientTable& b) {
  return static_cast<std::uint64_t>(a.length()) * static_cast<std::uint64_t>(b.length());
}

inline MomentReport report_from_jet(const JetResult& r, const CoefficientTable& a, const CoefficientTable& b, double T,
                                    std::string label) {
  MomentReport rep;
  rep.label = std::move(label);
  const double p1 = r.first.value(), p2 = r.second.value();
  rep.value = p1 + p2;
  if (r.pole_split) {
    rep.pieces = {{"pole_cancelled", p1}, {"regular", p2}};
  } else {
    rep.pieces = {{"zeta_plus", p1}, {"zeta_minus", p2}};
  }
  rep.t_integral = T * bump_integral(0.0);
  rep.pair_count = nominal_pairs(a, b);
  rep.summation_residual = r.sum_residual;
  rep.diagnostics.emplace_back("pole_residual", r.pole_residual);
  rep.diagnostics.emplace_back("jet_order", r.first.order());
  return rep;
}

// zeta(1 + s) for real s != 0.
inline double zeta_one_plus(double s) {
  if (std::abs(s) <= 3.0) return 1.0 / s + zeta_regular_taylor(s, 0)[0];
  return zeta(cplx(1.0 + s, 0.0)).value.real();
}

inline MomentReport pointwise_main_term(const CoefficientTable& a, const CoefficientTable& b, const ShiftPair& sh,
                                        double T, const MomentConfig& cfg, std::string label) {
  const double s = sh.sum();
  if (s == 0.0) throw std::invalid_argument("main_term pointwise: alpha + beta = 0 (use jet mode)");
  if (std::abs(s) < kNearPole) {
    JetResult r = main_term_jet_impl(a, b, sh.alpha, sh.beta, T, 0, cfg.par);
    return report_from_jet(r, a, b, T, std::move(label));
  }
  double residual = 0.0;
  const PairGrid gp = coprime_pair_grid(a, b, -sh.alpha, -sh.beta, 0, 0, cfg.par);
  const PairGrid gm = coprime_pair_grid(a, b, sh.beta, sh.alpha, 0, 0, cfg.par);
  residual = std::max(gp.residual, gm.residual);
  const double B0 = bump_integral(0.0);
  const double plus = T * zeta_one_plus(s) * B0 * gp.at(0, 0);
  const double minus = T * zeta_one_plus(-s) * bump_integral(-s) * std::exp(-s * std::log(T / kTwoPi)) * gm.at(0, 0);
  MomentReport rep;
  rep.label = std::move(label);
  rep.value = plus + minus;
  rep.pieces = {{"zeta_plus", plus}, {"zeta_minus", minus}};
  rep.t_integral = T * B0;
  rep.pair_count = nominal_pairs(a, b);
  rep.summation_residual = residual;
  return rep;
}

}  // namespace detail

// Main term for two different tables over the rectangle n <= N, k <= K.
inline MomentReport main_term_upsilon(const CoefficientTable& a, const CoefficientTable& b, const ShiftPair& shifts,
                                      double T, EvalMode mode = EvalMode::pointwise, const MomentConfig& cfg = {}) {
  detail::check_T(T);
  detail::check_budget(static_cast<double>(detail::nominal_pairs(a, b)), cfg);
  if (mode == EvalMode::pointwise) return detail::pointwise_main_term(a, b, shifts, T, cfg, "upsilon");
  const auto r = detail::main_term_jet_impl(a, b, shifts.alpha, shifts.beta, T, cfg.jet_order, cfg.par);
  return detail::report_from_jet(r, a, b, T, "upsilon");
}

// Main term of I(alpha, beta) for a single table.
inline MomentReport main_term_I(const CoefficientTable& coeffs, const ShiftPair& shifts, double T,
                                EvalMode mode = EvalMode::pointwise, const MomentConfig& cfg = {}) {
  MomentReport r = main_term_upsilon(coeffs, coeffs, shifts, T, mode, cfg);
  r.label = "main_term_I";
  return r;
}

// Full bivariate jet of the main term about (alpha0, beta0).
inline BivariateJet main_term_jet(const CoefficientTable& a, const CoefficientTable& b, double alpha0, double beta0,
                                  double T, int order, const MomentConfig& cfg = {}) {
  detail::check_T(T);
  detail::check_budget(static_cast<double>(detail::nominal_pairs(a, b)), cfg);
  return detail::main_term_jet_impl(a, b, alpha0, beta0, T, order, cfg.par).total();
}

// Main term for the convolution coefficients a * b.
inline MomentReport main_term_J(const CoefficientTable& a, const CoefficientTable& b, const ShiftPair& shifts, double T,
                                EvalMode mode = EvalMode::pointwise, const MomentConfig& cfg = {}) {
  if (a.length() < b.length()) throw std::invalid_argument("main_term_J: requires N >= K");
  const double len = static_cast<double>(a.length()) * static_cast<double>(b.length());
  detail::check_budget(len * len, cfg);
  MomentReport r = main_term_I(convolve_coeffs(a, b), shifts, T, mode, cfg);
  r.label = "main_term_J";
  return r;
}

// The alpha, beta -> 0 limit, by a direct double loop over d, e.
inline MomentReport main_term_limit(const CoefficientTable& coeffs, double T, const MomentConfig& cfg = {}) {
  detail::check_T(T);
  const std::size_t N = coeffs.length();
  detail::check_budget(static_cast<double>(N) * static_cast<double>(N), cfg);
  std::vector<double> logs(N + 1, 0.0);
  for (std::size_t n = 1; n <= N; ++n) logs[n] = std::log(static_cast<double>(n));
  constexpr std::size_t kChunks = 32;
  struct Partial {
    CompensatedSum<double> s0, s1;
  };
  const auto parts = map_chunks<Partial>(kChunks, cfg.par, [&](std::size_t c) {
    Partial p;
    for (std::size_t d = 1 + c; d <= N; d += kChunks) {
      const double ad = coeffs[d];
      if (ad == 0.0) continue;
      for (std::size_t e = 1; e <= N; ++e) {
        const double ae = coeffs[e];
        if (ae == 0.0) continue;
        const std::size_t g = std::gcd(d, e);
        const double w = ad * ae * static_cast<double>(g) / (static_cast<double>(d) * static_cast<double>(e));
        p.s0.add(w);
        p.s1.add(w * (2.0 * logs[g] - logs[d] - logs[e]));
      }
    }
    return p;
  });
  CompensatedSum<double> s0, s1;
  for (const auto& p : parts) {
    s0.merge(p.s0);
    s1.merge(p.s1);
  }
  const double B0 = bump_integral(0.0), B1 = bump_log_moment(0.0, 1);
  MomentReport rep;
  rep.label = "main_term_limit";
  const double log_part = T * (B0 * (std::log(T / kTwoPi) + 2.0 * kEulerGamma) + B1) * s0.value();
  const double arith_part = T * B0 * s1.value();
  rep.value = log_part + arith_part;
  rep.pieces = {{"log_t_part", log_part}, {"gcd_log_part", arith_part}};
  rep.t_integral = T * B0;
  rep.pair_count = static_cast<std::uint64_t>(N) * N;
  rep.summation_residual = std::max(s0.residual(), s1.residual());
  return rep;
}

// ---------------------------------------------------------------------------
// Direct quadrature of I(alpha, beta).

struct QuadratureControl {
  double panel_width = 0.5;
  double rel_tol = 1e-8;
  int max_depth = 12;
  std::size_t max_panels = 10'000'000;
  Parallelism par;
};

// A(1/2 + it) = sum a_n n^{-1/2 - it}.
class DirichletPolynomial {
 public:
  explicit DirichletPolynomial(const CoefficientTable& c) {
    for (std::size_t n = 1; n <= c.length(); ++n) {
      if (c[n] == 0.0) continue;
      const double ln = std::log(static_cast<double>(n));
      terms_.push_back({c[n] / std::sqrt(static_cast<double>(n)), ln});
    }
  }
  cplx operator()(double t) const {
    CompensatedSum<cplx> s;
    for (const auto& [w, ln] : terms_) s.add(std::polar(w, -t * ln));
    return s.value();
  }

 private:
  std::vector<std::pair<double, double>> terms_;
};

inline MomentReport quadrature_I(const CoefficientTable& coeffs, const ShiftPair& shifts, double T,
                                 const QuadratureControl& ctl = {}) {
  detail::check_T(T);
  if (T > 2e5) throw std::invalid_argument("quadrature_I: T above 2e5");
  if (coeffs.length() > 1000) throw std::invalid_argument("quadrature_I: N above 1000");
  if (!(ctl.panel_width > 0.0)) throw std::invalid_argument("quadrature_I: panel width must be positive");
  const auto panels = static_cast<std::size_t>(std::ceil(T / ctl.panel_width));
  if (panels > ctl.max_panels) throw BudgetExceeded("quadrature_I: panel count above budget");
  const double width = T / static_cast<double>(panels);
  const DirichletPolynomial A(coeffs);
  const double B0 = bump_integral(0.0);
  // Panel tolerance is relative to the panel integral; the floor only stops
  // refinement where Phi vanishes.
  const double panel_floor = 1e-300;
  const bool same = shifts.alpha == shifts.beta;

  auto integrand = [&](double t, bool& degraded) -> cplx {
    const double phi = bump(t / T);
    if (phi == 0.0) return 0.0;
    const ZetaValue z1 = zeta(cplx(0.5 + shifts.alpha, t));
    cplx zz;
    if (same) {
      zz = std::norm(z1.value);
    } else {
      const ZetaValue z2 = zeta(cplx(0.5 + shifts.beta, t));
      degraded = degraded || z2.degraded;
      zz = z1.value * std::conj(z2.value);
    }
    degraded = degraded || z1.degraded;
    return zz * std::norm(A(t)) * phi;
  };

  constexpr std::size_t kChunks = 64;
  struct Partial {
    CompensatedSum<cplx> value;
    CompensatedSum<double> error;
    std::size_t intervals = 0;
    bool degraded = false;
  };
  const auto parts = map_chunks<Partial>(kChunks, ctl.par, [&](std::size_t c) {
    Partial p;
    const std::size_t lo = c * panels / kChunks, hi = (c + 1) * panels / kChunks;
    for (std::size_t k = lo; k < hi; ++k) {
      const double a = T + width * static_cast<double>(k);
      const double b = (k + 1 == panels) ? 2.0 * T : a + width;
      bool deg = false;
      auto f = [&](double t) { return integrand(t, deg); };
      const auto q = integrate_adaptive(f, a, b, panel_floor, ctl.rel_tol, ctl.max_depth);
      p.value.add(q.value);
      p.error.add(q.error);
      p.intervals += q.intervals;
      p.degraded = p.degraded || deg || !q.converged;
    }
    return p;
  });
  CompensatedSum<cplx> total;
  CompensatedSum<double> err;
  MomentReport rep;
  rep.label = "quadrature_I";
  for (const auto& p : parts) {
    total.merge(p.value);
    err.merge(p.error);
    rep.panels += p.intervals;
    rep.degraded = rep.degraded || p.degraded;
  }
  rep.value = total.value().real();
  rep.imag_part = total.value().imag();
  rep.pieces = {{"quadrature", rep.value}};
  rep.error_estimate = err.value();
  rep.t_integral = T * B0;
  rep.pair_count = static_cast<std::uint64_t>(coeffs.length()) * coeffs.length();
  rep.summation_residual = total.residual();
  return rep;
}

// ---------------------------------------------------------------------------
// The Q operator and the critical-line proportion.

// sum_{i,j} q_i q_j (-1/L)^{i+j} d^i_alpha d^j_beta of the jet at its base.
inline double contract_Q(const UnitPolynomial& Q, const BivariateJet& jet, double L) {
  const int d = Q.degree();
  if (jet.order() < 2 * d) throw std::invalid_argument("apply_Q_operator: jet order below 2 deg Q");
  CompensatedSum<double> acc;
  for (int i = 0; i <= d; ++i) {
    if (Q[i] == 0.0) continue;
    for (int j = 0; j <= d; ++j) {
      if (Q[j] == 0.0) continue;
      acc.add(Q[i] * Q[j] * std::pow(-1.0 / L, i + j) * jet.derivative(i, j));
    }
  }
  return acc.value();
}

inline double apply_Q_operator(const UnitPolynomial& Q, const CoefficientTable& coeffs, double T, double eval_point,
                               int order = 12, const MomentConfig& cfg = {}) {
  if (order < 2 * Q.degree()) throw std::invalid_argument("apply_Q_operator: jet order below 2 deg Q");
  const BivariateJet jet = main_term_jet(coeffs, coeffs, eval_point, eval_point, T, order, cfg);
  return contract_Q(Q, jet, std::log(T));
}

struct KappaConfig {
  double R = presets::kFeng2011R;
  double theta1 = presets::kFeng2011Theta1;
  double theta2 = presets::kFeng2011Theta2;
  int K = presets::kFeng2011K;
  UnitPolynomial P1 = presets::feng2011_P1();
  std::vector<UnitPolynomial> Pk = {presets::feng2011_P2(), presets::feng2011_P3()};
  UnitPolynomial Q = presets::feng2011_Q();
  double T = 1e6;
  int jet_order = 12;
  bool trivial = false;     // psi = 1 and Q = 1
  double log_scale = 0.0;   // Feng normaliser; 0 means log T
  MomentConfig moment;

  static KappaConfig feng2011(double T) {
    KappaConfig c;
    c.T = T;
    return c;
  }
  static KappaConfig trivial_mollifier(double T, double R = presets::kFeng2011R) {
    KappaConfig c;
    c.T = T;
    c.R = R;
    c.trivial = true;
    c.Q = UnitPolynomial({1.0});
    return c;
  }
};

struct KappaReport {
  double T = 0.0;
  std::size_t N1 = 0, N2 = 0;
  double sigma0 = 0.0;
  double E_value = 0.0;
  double mean = 0.0;
  double kappa = 0.0;
  std::string normalization = "smoothed_mean";
};

// Builds the mollifier at sigma0 = 1/2 - R/L, applies Q(-d_alpha/L) Q(-d_beta/L)
// to the main term at alpha = beta = -R/L, normalises by T int Phi and returns
// 1 - log(mean)/R.
inline KappaReport kappa_lower_bound(const KappaConfig& cfg) {
  detail::check_T(cfg.T);
  if (!(cfg.R > 0.0)) throw std::invalid_argument("kappa: R must be positive");
  const double L = std::log(cfg.T);
  const double shift = -cfg.R / L;
  KappaReport rep;
  rep.T = cfg.T;
  rep.sigma0 = 0.5 + shift;
  CoefficientTable psi = CoefficientTable::delta(1);
  if (!cfg.trivial) {
    if (!(cfg.theta1 > 0.0 && cfg.theta2 > 0.0)) throw std::invalid_argument("kappa: theta must be positive");
    rep.N1 = mollifier_length(cfg.T, cfg.theta1);
    rep.N2 = mollifier_length(cfg.T, cfg.theta2);
    const double pairs = std::pow(static_cast<double>(std::max(rep.N1, rep.N2)), 2.0);
    detail::check_budget(pairs, cfg.moment);
    const CoefficientTable c1 = conrey_coeffs(rep.N1, cfg.P1, shift);
    const CoefficientTable c2 =
        feng_coeffs(rep.N2, cfg.Pk, cfg.K, shift, cfg.log_scale > 0.0 ? cfg.log_scale : L);
    psi = critical_line_coefficients(two_piece_coeffs(c1, c2));
  } else {
    rep.N1 = rep.N2 = 1;
  }
  MomentConfig mc = cfg.moment;
  mc.jet_order = cfg.jet_order;
  rep.E_value = apply_Q_operator(cfg.Q, psi, cfg.T, shift, cfg.jet_order, mc);
  rep.mean = rep.E_value / (cfg.T * bump_integral(0.0));
  if (!(rep.mean > 0.0) || !std::isfinite(rep.mean))
    throw InvalidResult("kappa: non-positive normalised moment " + std::to_string(rep.mean));
  rep.kappa = 1.0 - std::log(rep.mean) / cfg.R;
  return rep;
}

}  // namespace zmoment
