#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

namespace zmoment {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

// Neumaier's variant of Kahan summation. Works for double and complex<double>.
template <typename T>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(T init) : sum_(init) {}

  void add(T x) {
    if constexpr (std::is_same_v<T, cplx>) {
      re_.add(x.real());
      im_.add(x.imag());
    } else {
      const T t = sum_ + x;
      if (std::abs(sum_) >= std::abs(x)) {
        comp_ += (sum_ - t) + x;
      } else {
        comp_ += (x - t) + sum_;
      }
      sum_ = t;
    }
  }

  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }

  void merge(const CompensatedSum& other) {
    if constexpr (std::is_same_v<T, cplx>) {
      re_.merge(other.re_);
      im_.merge(other.im_);
    } else {
      add(other.sum_);
      add(other.comp_);
    }
  }

  T value() const {
    if constexpr (std::is_same_v<T, cplx>) {
      return {re_.value(), im_.value()};
    } else {
      return sum_ + comp_;
    }
  }

  // Size of the running correction term; a cheap indicator of cancellation.
  double residual() const {
    if constexpr (std::is_same_v<T, cplx>) {
      return std::hypot(re_.residual(), im_.residual());
    } else {
      return std::abs(comp_);
    }
  }

 private:
  struct Empty {};
  using Part = std::conditional_t<std::is_same_v<T, cplx>, CompensatedSum<double>, Empty>;
  T sum_{};
  T comp_{};
  [[no_unique_address]] Part re_{};
  [[no_unique_address]] Part im_{};
};

struct Parallelism {
  unsigned threads = 1;
};

// Evaluates fn(i) for i in [0, chunks) and returns the results in index order.
// The chunk decomposition is chosen by the caller and never depends on the
// thread count, so any reduction over the returned vector is bit-stable.
template <typename Result, typename Fn>
std::vector<Result> map_chunks(std::size_t chunks, Parallelism par, Fn&& fn) {
  std::vector<Result> out(chunks);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, par.threads), chunks));
  if (workers <= 1) {
    for (std::size_t i = 0; i < chunks; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= chunks) return;
          try {
            out[i] = fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(chunks);
            return;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

// Splits [lo, hi] into at most `pieces` contiguous ranges with roughly equal
// total weight. Deterministic in its arguments.
template <typename WeightFn>
std::vector<std::pair<std::size_t, std::size_t>> balanced_ranges(std::size_t lo, std::size_t hi,
                                                                 std::size_t pieces,
                                                                 WeightFn&& weight) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (hi < lo) return out;
  double total = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) total += weight(i);
  const double target = total / static_cast<double>(std::max<std::size_t>(1, pieces));
  std::size_t start = lo;
  double acc = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    acc += weight(i);
    if (acc >= target && out.size() + 1 < pieces) {
      out.emplace_back(start, i);
      start = i + 1;
      acc = 0.0;
    }
  }
  if (start <= hi) out.emplace_back(start, hi);
  return out;
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod quadrature (QUADPACK 10/21-point pair).

namespace detail {

inline constexpr double kGk21Nodes[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr double kGk21Weights[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452184, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
inline constexpr double kG10Weights[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

}  // namespace detail

template <typename T>
struct RuleEstimate {
  T kronrod{};
  T gauss{};
  double error() const { return std::abs(kronrod - gauss); }
};

// One 21-point Kronrod / 10-point Gauss evaluation over [a, b].
template <typename Fn>
auto gauss_kronrod21(Fn&& f, double a, double b) {
  using T = std::decay_t<decltype(f(a))>;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T kron = detail::kGk21Weights[10] * f(c);
  T gauss{};
  for (int i = 0; i < 10; ++i) {
    const double dx = h * detail::kGk21Nodes[i];
    const T sum = f(c - dx) + f(c + dx);
    kron += detail::kGk21Weights[i] * sum;
    if (i % 2 == 1) gauss += detail::kG10Weights[i / 2] * sum;
  }
  return RuleEstimate<T>{kron * h, gauss * h};
}

template <typename T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  std::size_t intervals = 0;
  bool converged = true;
};

// Recursive bisection until the Kronrod/Gauss difference meets the tolerance.
// The recursion order is fixed, so results are reproducible bit-for-bit.
template <typename Fn>
auto integrate_adaptive(Fn&& f, double a, double b, double abs_tol, double rel_tol,
                        int max_depth = 30) {
  using T = std::decay_t<decltype(f(a))>;
  QuadratureResult<T> result;
  CompensatedSum<T> total;
  CompensatedSum<double> err;
  const auto whole = gauss_kronrod21(f, a, b);
  const double scale = std::abs(whole.kronrod);

  struct Frame {
    double lo, hi;
    int depth;
    RuleEstimate<T> est;
  };
  std::vector<Frame> stack{{a, b, 0, whole}};
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    const double tol = std::max(abs_tol, rel_tol * scale) * (fr.hi - fr.lo) / (b - a);
    if (fr.est.error() <= tol || fr.depth >= max_depth) {
      if (fr.est.error() > tol) result.converged = false;
      total.add(fr.est.kronrod);
      err.add(fr.est.error());
      ++result.intervals;
      continue;
    }
    const double mid = 0.5 * (fr.lo + fr.hi);
    // Right half pushed first so the left half is processed first.
    stack.push_back({mid, fr.hi, fr.depth + 1, gauss_kronrod21(f, mid, fr.hi)});
    stack.push_back({fr.lo, mid, fr.depth + 1, gauss_kronrod21(f, fr.lo, mid)});
  }
  result.value = total.value();
  result.error = err.value();
  return result;
}

}  // namespace zmoment
