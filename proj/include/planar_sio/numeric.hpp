#pragma once

// Small numerical building blocks shared by every module: the complex scalar
// alias, the error types, compensated summation and Gauss-Legendre rules.

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace psio {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Base class of all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid geometric query (derivative at a corner, point outside a domain, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A quadrature produced a non-finite value or failed to converge.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// A caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Neumaier compensated accumulator. Summation order is the call order, so
/// results are reproducible bit-for-bit for a fixed sequence of inputs.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_same_v<T, cplx>) {
      re_.add(x.real());
      im_.add(x.imag());
    } else {
      const T t = sum_ + x;
      if (std::abs(sum_) >= std::abs(x)) {
        carry_ += (sum_ - t) + x;
      } else {
        carry_ += (x - t) + sum_;
      }
      sum_ = t;
    }
  }
  T value() const {
    if constexpr (std::is_same_v<T, cplx>) {
      return {re_.value(), im_.value()};
    } else {
      return sum_ + carry_;
    }
  }

 private:
  struct Empty {};
  std::conditional_t<std::is_same_v<T, cplx>, CompensatedSum<double>, Empty> re_{}, im_{};
  std::conditional_t<std::is_same_v<T, cplx>, Empty, T> sum_{}, carry_{};
};

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point Gauss-Legendre rule (thread safe, computed once per n).
const GaussRule& gauss_legendre(int n);

/// Binomial coefficient as double (exact for the small orders used here).
double binomial(int n, int k);

/// Falling factorial n (n-1) ... (n-k+1).
double falling_factorial(int n, int k);

/// Integer power by repeated squaring; exact multiplication sequence.
cplx ipow(cplx z, int n);

/// Least-squares line y = intercept + slope x with coefficient of determination.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Number of worker threads: explicit value if > 0, else PLANAR_SIO_THREADS, else 1.
int resolve_thread_count(int requested);

/// Process-wide worker count used by the parallel loops.
void set_thread_count(int n);
int thread_count();

/// Runs body(i) for i in [0, n) across thread_count() workers. Each index is
/// visited exactly once; callers write results into per-index slots so the
/// outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace psio
