#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace zmoment {

// Truncated univariate power series c_0 + c_1 x + ... + c_order x^order.
class Series {
 public:
  explicit Series(int order = 0) : c_(check_order(order) + 1, 0.0) {}
  Series(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
  }

  static Series constant(double value, int order) {
    Series s(order);
    s.c_[0] = value;
    return s;
  }
  // The series x (or c0 + x).
  static Series variable(int order, double c0 = 0.0) {
    Series s(order);
    s.c_[0] = c0;
    if (order >= 1) s.c_[1] = 1.0;
    return s;
  }
  // exp(rate * x).
  static Series exp_linear(double rate, int order) {
    Series s(order);
    double term = 1.0;
    for (int k = 0; k <= order; ++k) {
      s.c_[k] = term;
      term *= rate / (k + 1);
    }
    return s;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  double operator[](int k) const { return k <= order() ? c_[k] : 0.0; }
  double& operator[](int k) { return c_.at(k); }
  const std::vector<double>& coeffs() const { return c_; }

  Series truncated(int order) const {
    Series s(order);
    for (int k = 0; k <= std::min(order, this->order()); ++k) s.c_[k] = c_[k];
    return s;
  }

  double eval(double x) const {
    double acc = 0.0;
    for (int k = order(); k >= 0; --k) acc = acc * x + c_[k];
    return acc;
  }

  Series& operator+=(const Series& o) {
    const int n = std::min(order(), o.order());
    for (int k = 0; k <= n; ++k) c_[k] += o.c_[k];
    c_.resize(n + 1);
    return *this;
  }
  Series& operator-=(const Series& o) { return *this += (-1.0) * o; }
  Series& operator*=(double a) {
    for (double& v : c_) v *= a;
    return *this;
  }

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(double a, Series s) { return s *= a; }
  friend Series operator*(Series s, double a) { return s *= a; }
  friend Series operator*(const Series& a, const Series& b) {
    const int n = std::min(a.order(), b.order());
    Series out(n);
    for (int i = 0; i <= n; ++i) {
      if (a.c_[i] == 0.0) continue;
      for (int j = 0; i + j <= n; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return out;
  }

  // 1/s; requires a nonzero constant term.
  Series reciprocal() const {
    if (c_[0] == 0.0) throw std::invalid_argument("Series::reciprocal: zero constant term");
    Series out(order());
    out.c_[0] = 1.0 / c_[0];
    for (int k = 1; k <= order(); ++k) {
      double acc = 0.0;
      for (int j = 1; j <= k; ++j) acc += c_[j] * out.c_[k - j];
      out.c_[k] = -acc / c_[0];
    }
    return out;
  }

  Series exp() const {
    // f' = f * s' solved term by term.
    Series out(order());
    out.c_[0] = std::exp(c_[0]);
    for (int k = 1; k <= order(); ++k) {
      double acc = 0.0;
      for (int j = 1; j <= k; ++j) acc += j * c_[j] * out.c_[k - j];
      out.c_[k] = acc / k;
    }
    return out;
  }

  // this(inner(x)); inner must have zero constant term.
  Series compose(const Series& inner) const {
    if (inner[0] != 0.0) throw std::invalid_argument("Series::compose: inner constant term must be 0");
    const int n = std::min(order(), inner.order());
    Series out = Series::constant(c_[n], n);
    const Series in = inner.truncated(n);
    for (int k = n - 1; k >= 0; --k) {
      out = out * in;
      out.c_[0] += c_[k];
    }
    return out;
  }

  // Multiply by x^-1; the constant term must vanish.
  Series shift_down() const {
    Series out(std::max(0, order() - 1));
    for (int k = 1; k <= order(); ++k) out.c_[k - 1] = c_[k];
    return out;
  }

 private:
  static int check_order(int order) {
    if (order < 0) throw std::invalid_argument("Series: negative order");
    return order;
  }
  std::vector<double> c_;
};

// x^valuation * body, valid through x^(valuation + body.order()).
class LaurentSeries {
 public:
  LaurentSeries(int valuation, Series body) : val_(valuation), body_(std::move(body)) {}

  int valuation() const { return val_; }
  const Series& body() const { return body_; }
  // Highest power of x that is still exact.
  int max_power() const { return val_ + body_.order(); }

  double coefficient(int power) const {
    const int k = power - val_;
    return (k < 0 || k > body_.order()) ? 0.0 : body_[k];
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const Series& s) {
    return LaurentSeries(a.val_, a.body_ * s).normalized();
  }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    return LaurentSeries(a.val_ + b.val_, a.body_ * b.body_).normalized();
  }
  friend LaurentSeries operator*(double k, LaurentSeries a) {
    a.body_ *= k;
    return a;
  }
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    const int lo = std::min(a.val_, b.val_);
    const int hi = std::min(a.max_power(), b.max_power());
    Series body(std::max(0, hi - lo));
    for (int p = lo; p <= hi; ++p) body[p - lo] = a.coefficient(p) + b.coefficient(p);
    return LaurentSeries(lo, body).normalized();
  }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
    return a + (-1.0) * b;
  }

  // Drops exactly-zero leading coefficients, raising the valuation.
  LaurentSeries normalized() const {
    int k = 0;
    while (k < body_.order() && body_[k] == 0.0) ++k;
    if (k == 0) return *this;
    std::vector<double> c(body_.coeffs().begin() + k, body_.coeffs().end());
    return LaurentSeries(val_ + k, Series(std::move(c)));
  }

  // Ordinary power series through x^order; throws if a pole term is nonzero.
  Series regular_part(int order) const {
    for (int p = val_; p < 0; ++p) {
      if (coefficient(p) != 0.0) throw std::domain_error("LaurentSeries: pole not cancelled");
    }
    if (order > max_power()) throw std::invalid_argument("LaurentSeries: order beyond precision");
    Series out(order);
    for (int p = 0; p <= order; ++p) out[p] = coefficient(p);
    return out;
  }

 private:
  int val_;
  Series body_;
};

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return n <= 60 ? std::round(r) : r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Truncated bivariate Taylor expansion sum c_ij a^i b^j, i + j <= order, in the
// displacements a = alpha - alpha0 and b = beta - beta0.
class BivariateJet {
 public:
  BivariateJet(double alpha0, double beta0, int order)
      : a0_(alpha0), b0_(beta0), order_(order), c_(size_for(order), 0.0) {
    if (order < 0) throw std::invalid_argument("BivariateJet: negative order");
  }

  static BivariateJet constant(double value, double alpha0, double beta0, int order) {
    BivariateJet j(alpha0, beta0, order);
    j.c_[0] = value;
    return j;
  }

  // f(a + b) for a univariate series f in the total displacement.
  static BivariateJet of_sum(const Series& f, double alpha0, double beta0, int order) {
    if (f.order() < order) throw std::invalid_argument("BivariateJet::of_sum: series too short");
    BivariateJet j(alpha0, beta0, order);
    for (int d = 0; d <= order; ++d) {
      for (int i = 0; i <= d; ++i) j.at(i, d - i) = f[d] * binomial(d, i);
    }
    return j;
  }

  // Same coefficients, relabelled base point.
  BivariateJet with_base(double alpha0, double beta0) const {
    BivariateJet out = *this;
    out.a0_ = alpha0;
    out.b0_ = beta0;
    return out;
  }

  double alpha0() const { return a0_; }
  double beta0() const { return b0_; }
  int order() const { return order_; }

  double& at(int i, int j) { return c_[index(i, j)]; }
  double at(int i, int j) const {
    if (i < 0 || j < 0 || i + j > order_) return 0.0;
    return c_[index(i, j)];
  }
  double value() const { return c_[0]; }
  // d^i/dalpha^i d^j/dbeta^j at the base point.
  double derivative(int i, int j) const { return factorial(i) * factorial(j) * at(i, j); }

  double eval(double a, double b) const {
    double acc = 0.0;
    for (int d = order_; d >= 0; --d) {
      for (int i = 0; i <= d; ++i) acc += at(i, d - i) * std::pow(a, i) * std::pow(b, d - i);
    }
    return acc;
  }

  BivariateJet truncated(int order) const {
    BivariateJet out(a0_, b0_, order);
    for (int d = 0; d <= std::min(order, order_); ++d)
      for (int i = 0; i <= d; ++i) out.at(i, d - i) = at(i, d - i);
    return out;
  }

  BivariateJet& operator+=(const BivariateJet& o) {
    check_base(o);
    *this = truncated(std::min(order_, o.order_));
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  BivariateJet& operator*=(double k) {
    for (double& v : c_) v *= k;
    return *this;
  }
  friend BivariateJet operator+(BivariateJet a, const BivariateJet& b) { return a += b; }
  friend BivariateJet operator-(BivariateJet a, const BivariateJet& b) {
    return a += (-1.0) * b;
  }
  friend BivariateJet operator*(double k, BivariateJet a) { return a *= k; }
  friend BivariateJet operator*(const BivariateJet& x, const BivariateJet& y) {
    x.check_base(y);
    const int n = std::min(x.order_, y.order_);
    BivariateJet out(x.a0_, x.b0_, n);
    for (int d1 = 0; d1 <= n; ++d1) {
      for (int i1 = 0; i1 <= d1; ++i1) {
        const double u = x.at(i1, d1 - i1);
        if (u == 0.0) continue;
        for (int d2 = 0; d1 + d2 <= n; ++d2) {
          for (int i2 = 0; i2 <= d2; ++i2) {
            out.at(i1 + i2, d1 - i1 + d2 - i2) += u * y.at(i2, d2 - i2);
          }
        }
      }
    }
    return out;
  }

  BivariateJet exp() const {
    BivariateJet nil = *this;
    nil.c_[0] = 0.0;
    BivariateJet term = constant(1.0, a0_, b0_, order_);
    BivariateJet acc = term;
    for (int k = 1; k <= order_; ++k) {
      term = (1.0 / k) * (term * nil);
      acc += term;
    }
    return (std::exp(c_[0])) * acc;
  }

  // Exact quotient by (a + b). The returned jet has order one less. `defect`
  // receives the largest coefficient that obstructs exact divisibility
  // (constant term and the last consistency equation of each degree).
  BivariateJet divided_by_sum(double* defect = nullptr) const {
    if (order_ < 1) throw std::invalid_argument("BivariateJet::divided_by_sum: order < 1");
    BivariateJet q(a0_, b0_, order_ - 1);
    double worst = std::abs(c_[0]);
    for (int d = 1; d <= order_; ++d) {
      // num_{i,d-i} = q_{i-1,d-i} + q_{i,d-1-i}
      double prev = 0.0;
      for (int i = 0; i < d; ++i) {
        const double qi = at(i, d - i) - prev;
        q.at(i, d - 1 - i) = qi;
        prev = qi;
      }
      worst = std::max(worst, std::abs(at(d, 0) - prev));
    }
    if (defect) *defect = worst;
    return q;
  }

  // Re-expands the jet about (alpha0 + da, beta0 + db). Exact for polynomials;
  // for truncated jets the result carries the same truncation error.
  BivariateJet translated(double da, double db) const {
    BivariateJet out(a0_ + da, b0_ + db, order_);
    for (int d = 0; d <= order_; ++d) {
      for (int i = 0; i <= d; ++i) {
        const int j = d - i;
        const double c = at(i, j);
        if (c == 0.0) continue;
        for (int k = 0; k <= i; ++k) {
          const double fa = binomial(i, k) * std::pow(da, i - k);
          for (int l = 0; l <= j; ++l) {
            out.at(k, l) += c * fa * binomial(j, l) * std::pow(db, j - l);
          }
        }
      }
    }
    return out;
  }

 private:
  static std::size_t size_for(int order) {
    return static_cast<std::size_t>(order + 1) * static_cast<std::size_t>(order + 2) / 2;
  }
  std::size_t index(int i, int j) const {
    if (i < 0 || j < 0 || i + j > order_) throw std::out_of_range("BivariateJet index");
    const int d = i + j;
    return static_cast<std::size_t>(d) * (d + 1) / 2 + static_cast<std::size_t>(j);
  }
  void check_base(const BivariateJet& o) const {
    if (a0_ != o.a0_ || b0_ != o.b0_) throw std::invalid_argument("BivariateJet: base points differ");
  }

  double a0_, b0_;
  int order_;
  std::vector<double> c_;
};

}  // namespace zmoment
