#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zmoment/arith.hpp"

namespace zmoment {

// Real polynomial in ascending-degree coefficients, used on [0, 1].
class UnitPolynomial {
 public:
  UnitPolynomial() : c_{0.0} {}
  UnitPolynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
  }

  static UnitPolynomial monomial(int degree, double coeff = 1.0) {
    std::vector<double> c(degree + 1, 0.0);
    c[degree] = coeff;
    return UnitPolynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coefficients() const { return c_; }
  double operator[](int k) const { return k <= degree() ? c_[k] : 0.0; }

  double operator()(double x) const {
    double acc = 0.0;
    for (int k = degree(); k >= 0; --k) acc = acc * x + c_[k];
    return acc;
  }

  friend UnitPolynomial operator+(const UnitPolynomial& a, const UnitPolynomial& b) {
    std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[static_cast<int>(k)] + b[static_cast<int>(k)];
    return UnitPolynomial(std::move(c));
  }
  friend UnitPolynomial operator*(const UnitPolynomial& a, const UnitPolynomial& b) {
    std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UnitPolynomial(std::move(c));
  }
  friend UnitPolynomial operator*(double k, UnitPolynomial p) {
    for (double& v : p.c_) v *= k;
    return p;
  }

  UnitPolynomial power(int n) const {
    UnitPolynomial out({1.0});
    for (int i = 0; i < n; ++i) out = out * *this;
    return out;
  }

 private:
  std::vector<double> c_;
};

// The polynomials of the two-piece Conrey + Feng configuration.
namespace presets {

inline UnitPolynomial feng2011_P1() {
  const UnitPolynomial x({0.0, 1.0});
  const UnitPolynomial one_minus_x({1.0, -1.0});
  const double w[] = {0.327608, -1.62086, -0.160377, 1.29018};
  UnitPolynomial p = x;
  for (int j = 1; j <= 4; ++j) p = p + w[j - 1] * (x * one_minus_x.power(j));
  return p;
}
inline UnitPolynomial feng2011_P2() { return UnitPolynomial({0.0, 0.197567, 2.40831}); }
inline UnitPolynomial feng2011_P3() { return UnitPolynomial({0.0, 0.649142, 1.042}); }
inline UnitPolynomial feng2011_Q() {
  const UnitPolynomial y({1.0, -2.0});
  return UnitPolynomial({0.491203}) + 0.630413 * y + (-0.149615) * y.power(3) +
         0.0279997 * y.power(5);
}
inline constexpr double kFeng2011R = 1.3025;
inline constexpr int kFeng2011K = 3;
inline constexpr double kFeng2011Theta1 = 4.0 / 7.0;
inline constexpr double kFeng2011Theta2 = 6.0 / 11.0;

}  // namespace presets

enum class CoefficientKind { generic, conrey, feng, two_piece, convolution };

inline std::string to_string(CoefficientKind k) {
  switch (k) {
    case CoefficientKind::generic: return "generic";
    case CoefficientKind::conrey: return "conrey";
    case CoefficientKind::feng: return "feng";
    case CoefficientKind::two_piece: return "two_piece";
    case CoefficientKind::convolution: return "convolution";
  }
  return "generic";
}

// Mollifier coefficients a_1..a_N. Slot 0 is unused.
class CoefficientTable {
 public:
  CoefficientTable(std::vector<double> values, CoefficientKind kind, double sigma0_shift = 0.0)
      : values_(std::move(values)), kind_(kind), shift_(sigma0_shift) {
    if (values_.size() < 2) throw std::invalid_argument("CoefficientTable: length must be >= 1");
    values_[0] = 0.0;
  }

  static CoefficientTable from_values(const std::vector<double>& a_1_to_n,
                                      CoefficientKind kind = CoefficientKind::generic) {
    std::vector<double> v(a_1_to_n.size() + 1, 0.0);
    std::copy(a_1_to_n.begin(), a_1_to_n.end(), v.begin() + 1);
    return CoefficientTable(std::move(v), kind);
  }
  static CoefficientTable delta(std::size_t length = 1) {
    std::vector<double> v(length + 1, 0.0);
    v[1] = 1.0;
    return CoefficientTable(std::move(v), CoefficientKind::generic);
  }

  std::size_t length() const { return values_.size() - 1; }
  CoefficientKind kind() const { return kind_; }
  double sigma0_shift() const { return shift_; }
  double operator[](std::size_t n) const { return n < values_.size() ? values_[n] : 0.0; }
  const std::vector<double>& raw() const { return values_; }

  // max_n |a_n| / n^0.1, the recorded growth constant.
  double growth_constant() const {
    double c = 0.0;
    for (std::size_t n = 1; n < values_.size(); ++n)
      c = std::max(c, std::abs(values_[n]) / std::pow(static_cast<double>(n), 0.1));
    return c;
  }

 private:
  std::vector<double> values_;
  CoefficientKind kind_;
  double shift_;
};

// floor(T^theta / log T), realising a length T^(theta - eps).
inline std::size_t mollifier_length(double T, double theta) {
  if (!(T > 1.0) || !(theta > 0.0)) throw std::invalid_argument("mollifier_length: need T > 1, theta > 0");
  const double n = std::floor(std::pow(T, theta) / std::log(T));
  return static_cast<std::size_t>(std::max(1.0, n));
}

namespace detail {
inline double unit_argument(std::size_t N, std::size_t n, double log_denominator) {
  if (N == 1) return 1.0;  // single term: treat n = 1 as the top of the range
  return std::log(static_cast<double>(N) / static_cast<double>(n)) / log_denominator;
}
}  // namespace detail

// a_n = mu(n) n^shift P(log(N/n)/log N).
inline CoefficientTable conrey_coeffs(std::size_t N, const UnitPolynomial& P, double sigma0_shift = 0.0) {
  if (N == 0) throw std::invalid_argument("conrey_coeffs: N must be >= 1");
  const ArithTable mu = sieve_mobius(N);
  const double logN = std::log(static_cast<double>(N));
  std::vector<double> v(N + 1, 0.0);
  for (std::size_t n = 1; n <= N; ++n) {
    if (mu[n] == 0.0) continue;
    v[n] = mu[n] * std::pow(static_cast<double>(n), sigma0_shift) * P(detail::unit_argument(N, n, logN));
  }
  return CoefficientTable(std::move(v), CoefficientKind::conrey, sigma0_shift);
}

// a_n = n^shift sum_{k=2..K} mu^2(n) (mu * Lambda^{*k})(n) P_k(log(N/n)/log N) / log_scale^k.
// polys[0] is P_2, polys[K-2] is P_K.
inline CoefficientTable feng_coeffs(std::size_t N, const std::vector<UnitPolynomial>& polys, int K,
                                    double sigma0_shift, double log_scale) {
  if (K < 2) throw std::invalid_argument("feng_coeffs: K must be >= 2");
  if (N == 0) throw std::invalid_argument("feng_coeffs: N must be >= 1");
  if (polys.size() != static_cast<std::size_t>(K - 1))
    throw std::invalid_argument("feng_coeffs: need one polynomial for each k = 2..K");
  if (!(log_scale > 0.0)) throw std::invalid_argument("feng_coeffs: log_scale must be positive");
  const ArithTable mu = sieve_mobius(N);
  const ArithTable lam = sieve_von_mangoldt(N);
  const double logN = std::log(static_cast<double>(N));
  std::vector<double> v(N + 1, 0.0);
  ArithTable conv = mu;
  for (int k = 1; k <= K; ++k) {
    conv = dirichlet_convolve(conv, lam);
    if (k < 2) continue;
    const double norm = std::pow(log_scale, -k);
    const UnitPolynomial& P = polys[k - 2];
    for (std::size_t n = 1; n <= N; ++n) {
      if (mu[n] == 0.0 || conv[n] == 0.0) continue;
      v[n] += norm * conv[n] * P(detail::unit_argument(N, n, logN));
    }
  }
  for (std::size_t n = 1; n <= N; ++n) {
    if (v[n] != 0.0) v[n] *= std::pow(static_cast<double>(n), sigma0_shift);
  }
  return CoefficientTable(std::move(v), CoefficientKind::feng, sigma0_shift);
}

inline CoefficientTable two_piece_coeffs(const CoefficientTable& c1, const CoefficientTable& c2) {
  if (c1.sigma0_shift() != c2.sigma0_shift())
    throw std::invalid_argument("two_piece_coeffs: pieces carry different sigma0 shifts");
  const std::size_t n = std::max(c1.length(), c2.length());
  std::vector<double> v(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) v[k] = c1[k] + c2[k];
  return CoefficientTable(std::move(v), CoefficientKind::two_piece, c1.sigma0_shift());
}

// Dirichlet convolution d = n k of two coefficient tables; length N K.
inline CoefficientTable convolve_coeffs(const CoefficientTable& a, const CoefficientTable& b) {
  const std::size_t N = a.length(), K = b.length();
  if (K != 0 && N > std::numeric_limits<std::size_t>::max() / K / 2)
    throw std::invalid_argument("convolve_coeffs: product length overflows");
  const std::size_t L = N * K;
  if (L > (std::size_t{1} << 31)) throw std::invalid_argument("convolve_coeffs: product length too large");
  std::vector<double> v(L + 1, 0.0);
  for (std::size_t n = 1; n <= N; ++n) {
    if (a[n] == 0.0) continue;
    for (std::size_t k = 1; k <= K; ++k) v[n * k] += a[n] * b[k];
  }
  return CoefficientTable(std::move(v), CoefficientKind::convolution, a.sigma0_shift());
}

// Removes the n^shift weight, giving the coefficients of A(1/2 + it).
inline CoefficientTable critical_line_coefficients(const CoefficientTable& c) {
  std::vector<double> v = c.raw();
  if (c.sigma0_shift() != 0.0) {
    for (std::size_t n = 1; n < v.size(); ++n)
      if (v[n] != 0.0) v[n] *= std::pow(static_cast<double>(n), -c.sigma0_shift());
  }
  return CoefficientTable(std::move(v), c.kind(), 0.0);
}

// Reads "n a_n" pairs, one per line. Blank lines and lines starting with '#' are skipped.
// Missing indices are zero.
inline CoefficientTable load_coefficient_table(std::istream& in) {
  std::vector<double> v(1, 0.0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    long long n = 0;
    double a = 0.0;
    std::string rest;
    if (!(ss >> n >> a) || (ss >> rest) || n < 1)
      throw std::invalid_argument("coefficient file: bad line " + std::to_string(lineno));
    if (static_cast<std::size_t>(n) >= v.size()) v.resize(static_cast<std::size_t>(n) + 1, 0.0);
    v[static_cast<std::size_t>(n)] = a;
  }
  if (v.size() < 2) throw std::invalid_argument("coefficient file: no entries");
  return CoefficientTable(std::move(v), CoefficientKind::generic);
}

inline CoefficientTable load_coefficient_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open coefficient file: " + path);
  return load_coefficient_table(in);
}

}  // namespace zmoment
