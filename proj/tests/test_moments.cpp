#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "zmoment/moments.hpp"

using namespace zmoment;

namespace {

CoefficientTable random_table(std::uint64_t seed, std::size_t N) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(N);
  for (auto& x : v) x = u(rng);
  return CoefficientTable::from_values(v);
}

// The closed form summed pair by pair with no gcd restructuring.
double naive_main_term(const CoefficientTable& a, const CoefficientTable& b, double alpha, double beta, double T) {
  const double s = alpha + beta;
  const double zp = zeta(cplx(1.0 + s, 0.0)).value.real();
  const double zm = zeta(cplx(1.0 - s, 0.0)).value.real();
  const double B0 = bump_integral(0.0), Bs = bump_integral(-s);
  long double acc = 0.0L;
  for (std::size_t d = 1; d <= a.length(); ++d)
    for (std::size_t e = 1; e <= b.length(); ++e) {
      if (a[d] == 0.0 || b[e] == 0.0) continue;
      const double g = static_cast<double>(std::gcd(d, e));
      const double dd = static_cast<double>(d), ee = static_cast<double>(e);
      const double w = a[d] * b[e] * g / (dd * ee) * std::pow(g, s) / (std::pow(dd, alpha) * std::pow(ee, beta));
      const double y = kTwoPi * dd * ee / (g * g);
      acc += w * T * (zp * B0 + zm * std::pow(y / T, s) * Bs);
    }
  return static_cast<double>(acc);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(MainTerm, DeltaLimitMatchesDirectIntegral) {
  const double T = 1e4;
  auto f = [&](double t) { return (std::log(t / kTwoPi) + 2.0 * kEulerGamma) * bump(t / T); };
  const double want = integrate_adaptive(f, T, 2.0 * T, 1e-12, 1e-14).value;
  // Second rule: composite Simpson.
  double simpson = 0.0;
  const int n = 20000;
  for (int k = 0; k <= n; ++k) simpson += (k == 0 || k == n ? 1 : (k % 2 ? 4 : 2)) * f(T + k * T / n);
  simpson *= T / n / 3.0;
  EXPECT_LT(rel(simpson, want), 1e-10);
  const CoefficientTable d = CoefficientTable::delta(1);
  EXPECT_LT(rel(main_term_I(d, ShiftPair(0, 0), T, EvalMode::jet).value, want), 1e-10);
  EXPECT_LT(rel(main_term_limit(d, T).value, want), 1e-10);
}

TEST(MainTerm, PointwiseAgreesWithJetOrderZero) {
  const double T = 1e4, a = 1.0 / std::log(T);
  const CoefficientTable d = CoefficientTable::delta(1);
  const double p = main_term_I(d, ShiftPair(a, a), T).value;
  MomentConfig cfg;
  cfg.jet_order = 0;
  EXPECT_LT(rel(main_term_I(d, ShiftPair(a, a), T, EvalMode::jet, cfg).value, p), 1e-8);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const CoefficientTable c = random_table(seed, 50 + 50 * seed);
    const ShiftPair sh(0.3 * a, -0.1 * a);
    EXPECT_LT(rel(main_term_I(c, sh, T, EvalMode::jet).value, main_term_I(c, sh, T).value), 1e-9);
  }
}

TEST(MainTerm, MatchesNaiveDoubleLoop) {
  const double T = 1e5;
  const CoefficientTable c = random_table(11, 300);
  for (const ShiftPair sh : {ShiftPair(0.05, 0.02), ShiftPair(-0.03, 0.08), ShiftPair(0.2, 0.1)}) {
    EXPECT_LT(rel(main_term_I(c, sh, T).value, naive_main_term(c, c, sh.alpha, sh.beta, T)), 1e-10);
  }
}

TEST(MainTerm, SwapSymmetryForRealCoefficients) {
  const CoefficientTable c = random_table(5, 150);
  const double T = 1e6;
  const double x = main_term_I(c, ShiftPair(0.04, -0.01), T).value;
  const double y = main_term_I(c, ShiftPair(-0.01, 0.04), T).value;
  EXPECT_LT(rel(x, y), 1e-12);
}

TEST(MainTerm, PiecesSumToValue) {
  const CoefficientTable c = random_table(6, 80);
  for (auto mode : {EvalMode::pointwise, EvalMode::jet}) {
    const MomentReport r = main_term_I(c, ShiftPair(0.02, 0.03), 1e5, mode);
    EXPECT_LT(std::abs(r.pieces_total() - r.value), 1e-10 * std::abs(r.value));
    EXPECT_EQ(r.pair_count, 80u * 80u);
  }
  const MomentReport z = main_term_I(c, ShiftPair(0.0, 0.0), 1e5, EvalMode::jet);
  EXPECT_NO_THROW(z.piece("pole_cancelled"));
  EXPECT_THROW(z.piece("nope"), std::out_of_range);
}

TEST(MainTerm, PointwiseRefusesZeroSum) {
  EXPECT_THROW(main_term_I(CoefficientTable::delta(1), ShiftPair(0.1, -0.1), 1e4), std::invalid_argument);
  EXPECT_NO_THROW(main_term_I(CoefficientTable::delta(1), ShiftPair(0.1, -0.1), 1e4, EvalMode::jet));
}

TEST(MainTerm, RemovableSingularity) {
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const CoefficientTable c = random_table(seed, 20 + (seed * 37) % 180);
    const double T = 1e3 * static_cast<double>(seed - 99);
    const MomentReport j = main_term_I(c, ShiftPair(0, 0), T, EvalMode::jet);
    EXPECT_LT(rel(j.value, main_term_limit(c, T).value), 1e-9) << seed;
    double pole = 1.0;
    for (const auto& [k, v] : j.diagnostics)
      if (k == "pole_residual") pole = v;
    EXPECT_LT(pole, 1e-9 * std::abs(j.value));
  }
}

TEST(MainTerm, ContinuousAcrossThePole) {
  // Jet about (0,0) evaluated off the line alpha + beta = 0 against pointwise
  // values on both sides of the near-pole threshold.
  const CoefficientTable c = random_table(21, 60);
  const double T = 1e5;
  const BivariateJet j = main_term_jet(c, c, 0.0, 0.0, T, 12);
  for (const auto& [a, b] : {std::pair{3e-4, 1e-4}, std::pair{2e-3, 1e-3}, std::pair{-4e-4, 0.0}}) {
    EXPECT_LT(rel(j.eval(a, b), main_term_I(c, ShiftPair(a, b), T).value), 1e-9) << a << " " << b;
  }
}

TEST(MainTerm, LimitScalingUnderDoubledT) {
  const CoefficientTable c = random_table(31, 100);
  const double T = 1e4;
  double s0 = 0.0;
  for (std::size_t d = 1; d <= 100; ++d)
    for (std::size_t e = 1; e <= 100; ++e)
      s0 += c[d] * c[e] * static_cast<double>(std::gcd(d, e)) / (static_cast<double>(d) * static_cast<double>(e));
  const double shift = main_term_limit(c, 2 * T).value / (2 * T) - main_term_limit(c, T).value / T;
  EXPECT_NEAR(shift, std::log(2.0) * bump_integral(0.0) * s0, 1e-9 * std::abs(main_term_limit(c, T).value / T));
}

TEST(Upsilon, RectangularAgainstBruteForce) {
  const CoefficientTable a = random_table(41, 50), b = random_table(42, 30);
  const double T = 1e4, s = 1.0 / std::log(T);
  EXPECT_LT(rel(main_term_upsilon(a, b, ShiftPair(s, s), T).value, naive_main_term(a, b, s, s, T)), 1e-10);
  EXPECT_LT(rel(main_term_upsilon(a, a, ShiftPair(s, s), T).value, main_term_I(a, ShiftPair(s, s), T).value), 1e-14);
}

TEST(Upsilon, DeltaCollapsesToSingleSum) {
  const CoefficientTable a = random_table(43, 40), d = CoefficientTable::delta(1);
  const double T = 1e4, al = 0.03, be = 0.01, s = al + be;
  double plus = 0.0, minus = 0.0;
  for (std::size_t n = 1; n <= 40; ++n) {
    const double nn = static_cast<double>(n);
    plus += a[n] / nn * std::pow(nn, -al);
    minus += a[n] / nn * std::pow(nn, -al) * std::pow(kTwoPi * nn / T, s);
  }
  const double want = T * (zeta(cplx(1 + s, 0)).value.real() * bump_integral(0) * plus +
                           zeta(cplx(1 - s, 0)).value.real() * bump_integral(-s) * minus);
  EXPECT_LT(rel(main_term_upsilon(a, d, ShiftPair(al, be), T).value, want), 1e-12);
}

TEST(Convolution, MatchesBruteForceTable) {
  const CoefficientTable a = random_table(51, 20), b = random_table(52, 10);
  std::vector<double> conv(200, 0.0);
  for (std::size_t n = 1; n <= 20; ++n)
    for (std::size_t k = 1; k <= 10; ++k) conv[n * k - 1] += a[n] * b[k];
  const CoefficientTable brute = CoefficientTable::from_values(conv);
  const ShiftPair sh(0.02, 0.05);
  const double T = 1e5;
  EXPECT_LT(rel(main_term_J(a, b, sh, T).value, main_term_I(brute, sh, T).value), 1e-12);
  EXPECT_LT(rel(main_term_J(a, CoefficientTable::delta(1), sh, T).value, main_term_I(a, sh, T).value), 1e-14);
  const CoefficientTable d = CoefficientTable::delta(1);
  EXPECT_LT(rel(main_term_J(d, d, sh, T).value, main_term_I(d, sh, T).value), 1e-15);
  EXPECT_THROW(main_term_J(b, a, sh, T), std::invalid_argument);
}

TEST(Budget, ExceededThrows) {
  MomentConfig cfg;
  cfg.pair_budget = 100;
  const CoefficientTable c = random_table(61, 11);
  EXPECT_THROW(main_term_I(c, ShiftPair(0.1, 0.1), 1e4, EvalMode::pointwise, cfg), BudgetExceeded);
  EXPECT_THROW(main_term_limit(c, 1e4, cfg), BudgetExceeded);
  EXPECT_THROW(main_term_I(c, ShiftPair(0.1, 0.1), 5.0), std::invalid_argument);
}

TEST(Jet, DerivativesMatchFiniteDifferences) {
  const double T = 1e4;
  for (std::uint64_t seed : {71u, 72u}) {
    const CoefficientTable c = random_table(seed, 100);
    const double a0 = 0.06, b0 = 0.03;
    const BivariateJet j = main_term_jet(c, c, a0, b0, T, 4);
    auto f = [&](double a, double b) { return main_term_I(c, ShiftPair(a, b), T).value; };
    const double h1 = 1e-5, h2 = 1e-4;
    EXPECT_LT(rel(j.derivative(0, 0), f(a0, b0)), 1e-10);
    EXPECT_LT(rel(j.derivative(1, 0), (f(a0 + h1, b0) - f(a0 - h1, b0)) / (2 * h1)), 1e-4);
    EXPECT_LT(rel(j.derivative(0, 1), (f(a0, b0 + h1) - f(a0, b0 - h1)) / (2 * h1)), 1e-4);
    EXPECT_LT(rel(j.derivative(2, 0), (f(a0 + h2, b0) - 2 * f(a0, b0) + f(a0 - h2, b0)) / (h2 * h2)), 1e-4);
    EXPECT_LT(rel(j.derivative(0, 2), (f(a0, b0 + h2) - 2 * f(a0, b0) + f(a0, b0 - h2)) / (h2 * h2)), 1e-4);
    const double fd11 =
        (f(a0 + h2, b0 + h2) - f(a0 + h2, b0 - h2) - f(a0 - h2, b0 + h2) + f(a0 - h2, b0 - h2)) / (4 * h2 * h2);
    EXPECT_LT(rel(j.derivative(1, 1), fd11), 1e-4);
  }
}

TEST(QOperator, ConstantAndLinear) {
  const double T = 1e4, L = std::log(T), x0 = -0.05;
  const CoefficientTable d = CoefficientTable::delta(1);
  const double q1 = apply_Q_operator(UnitPolynomial({1.0}), d, T, x0, 2);
  EXPECT_LT(rel(q1, main_term_I(d, ShiftPair(x0, x0), T).value), 1e-12);
  // Q(x) = x: (-1/L)^2 d_alpha d_beta.
  const double qx = apply_Q_operator(UnitPolynomial({0.0, 1.0}), d, T, x0, 2);
  auto f = [&](double a, double b) { return main_term_I(d, ShiftPair(a, b), T).value; };
  const double h = 1e-4;
  const double fd11 = (f(x0 + h, x0 + h) - f(x0 + h, x0 - h) - f(x0 - h, x0 + h) + f(x0 - h, x0 - h)) / (4 * h * h);
  EXPECT_LT(rel(qx, fd11 / (L * L)), 1e-5);
  // Single-variable derivative through the jet contraction.
  const BivariateJet j = main_term_jet(d, d, x0, x0, T, 2);
  const double hd = 1e-6;
  EXPECT_LT(rel(-j.derivative(1, 0) / L, -(f(x0 + hd, x0) - f(x0 - hd, x0)) / (2 * hd) / L), 1e-5);
  EXPECT_THROW(apply_Q_operator(presets::feng2011_Q(), d, T, x0, 8), std::invalid_argument);
}

TEST(QOperator, PresetMixedPartialAgainstStencil) {
  const double T = 1e4, x0 = -presets::kFeng2011R / std::log(T);
  const CoefficientTable c = random_table(81, 30);
  const BivariateJet j = main_term_jet(c, c, x0, x0, T, 12);
  auto f = [&](double a, double b) { return main_term_I(c, ShiftPair(a, b), T).value; };
  const double h = 1e-4;
  const double fd11 = (f(x0 + h, x0 + h) - f(x0 + h, x0 - h) - f(x0 - h, x0 + h) + f(x0 - h, x0 - h)) / (4 * h * h);
  EXPECT_LT(rel(j.at(1, 1), fd11), 1e-4);
}

TEST(Quadrature, SmallTAgainstLimit) {
  const double T = 1e3;
  const MomentReport q = quadrature_I(CoefficientTable::delta(1), ShiftPair(0, 0), T);
  const MomentReport m = main_term_limit(CoefficientTable::delta(1), T);
  EXPECT_LT(rel(q.value, m.value), 1e-3);
  EXPECT_LT(std::abs(q.imag_part), 1e-10 * q.value);
  EXPECT_FALSE(q.degraded);
  EXPECT_GT(q.panels, 0u);
}

TEST(Quadrature, ShiftedAndMollified) {
  const double T = 2e3;
  const CoefficientTable c = conrey_coeffs(8, presets::feng2011_P1(), 0.0);
  const ShiftPair sh(0.05, 0.02);
  const MomentReport q = quadrature_I(c, sh, T);
  const MomentReport m = main_term_I(c, sh, T);
  EXPECT_LT(rel(q.value, m.value), 1e-2);
  EXPECT_THROW(quadrature_I(c, sh, 3e5), std::invalid_argument);
  EXPECT_THROW(quadrature_I(random_table(1, 1001), sh, 1e3), std::invalid_argument);
}

TEST(Quadrature, PanelBudget) {
  QuadratureControl ctl;
  ctl.max_panels = 10;
  EXPECT_THROW(quadrature_I(CoefficientTable::delta(1), ShiftPair(0, 0), 1e3, ctl), BudgetExceeded);
}

TEST(Determinism, BitIdenticalAcrossThreadCounts) {
  const CoefficientTable c = random_table(91, 400);
  std::vector<double> values;
  for (unsigned threads : {1u, 4u, 16u}) {
    MomentConfig cfg;
    cfg.par.threads = threads;
    const MomentReport r = main_term_I(c, ShiftPair(0.0, 0.0), 1e6, EvalMode::jet, cfg);
    values.push_back(r.value);
    values.push_back(r.summation_residual);
    values.push_back(main_term_limit(c, 1e6, cfg).value);
  }
  for (std::size_t i = 3; i < values.size(); ++i) EXPECT_EQ(values[i], values[i % 3]);
}

TEST(Kappa, TrendAndTrivialComparison) {
  double prev = -1e9;
  for (double T : {1e4, 1e6}) {
    const KappaReport k = kappa_lower_bound(KappaConfig::feng2011(T));
    const KappaReport t = kappa_lower_bound(KappaConfig::trivial_mollifier(T));
    EXPECT_TRUE(std::isfinite(k.kappa));
    EXPECT_GT(k.kappa, t.kappa);
    EXPECT_GT(k.kappa, prev);
    EXPECT_NEAR(k.sigma0, 0.5 - presets::kFeng2011R / std::log(T), 1e-15);
    prev = k.kappa;
  }
}

TEST(Kappa, ContinuousInR) {
  const double T = 1e6;
  KappaConfig c = KappaConfig::feng2011(T);
  const double k0 = kappa_lower_bound(c).kappa;
  for (double dR : {-0.05, 0.05}) {
    c.R = presets::kFeng2011R + dR;
    EXPECT_LT(std::abs(kappa_lower_bound(c).kappa - k0), 0.05);
  }
}

TEST(Kappa, Errors) {
  KappaConfig c = KappaConfig::feng2011(1e4);
  c.Q = UnitPolynomial({0.0});
  EXPECT_THROW(kappa_lower_bound(c), InvalidResult);
  c = KappaConfig::feng2011(1e8);
  c.moment.pair_budget = 1e3;
  EXPECT_THROW(kappa_lower_bound(c), BudgetExceeded);
  c = KappaConfig::feng2011(1e4);
  c.R = 0.0;
  EXPECT_THROW(kappa_lower_bound(c), std::invalid_argument);
}
