#pragma once

// Test functions with analytically supplied Wirtinger derivatives
// ∂^a ∂̄^b f, so no experiment ever differentiates numerical data.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "planar_sio/geometry.hpp"
#include "planar_sio/numeric.hpp"

namespace psio {

/// A single analytic function together with its mixed Wirtinger derivatives.
class FunctionModel {
 public:
  virtual ~FunctionModel() = default;
  /// ∂^a ∂̄^b of the model at z, for a + b <= max_order().
  virtual cplx wirtinger(int a, int b, cplx z) const = 0;
  virtual int max_order() const = 0;
};

/// Linear combination of shifted function models. Cheap to copy.
///
/// derivative(a, b) returns a view whose wirtinger(i, j) is the parent's
/// wirtinger(i + a, j + b); k_max shrinks accordingly.
class TestFunction {
 public:
  /// The zero function.
  TestFunction() = default;
  TestFunction(std::shared_ptr<const FunctionModel> model, std::string label);

  cplx operator()(cplx z) const { return wirtinger(0, 0, z); }
  cplx eval(cplx z) const { return wirtinger(0, 0, z); }
  cplx wirtinger(int a, int b, cplx z) const;

  /// Evaluates ∂^a ∂̄^b at every point of `z` into `out`.
  void wirtinger(int a, int b, std::span<const cplx> z, std::span<cplx> out) const;

  int k_max() const;
  const std::string& label() const { return label_; }
  bool is_zero() const { return terms_.empty(); }

  TestFunction derivative(int a, int b) const;
  TestFunction scaled(cplx c) const;
  TestFunction relabeled(std::string label) const;

  friend TestFunction operator+(const TestFunction& f, const TestFunction& g);

 private:
  struct Term {
    cplx coeff;
    std::shared_ptr<const FunctionModel> model;
    int da;
    int db;
  };
  std::vector<Term> terms_;
  std::string label_ = "0";
};

/// z^p conj(z)^q.
TestFunction monomial(int p, int q);

/// 1 / (z - pole); holomorphic away from the pole.
TestFunction simple_pole(cplx pole);

/// exp(-1 / (1 - |z-c|²/r²)) inside the disc of radius r about c, 0 outside.
/// Throws PreconditionError when the closed support disc meets bD.
TestFunction bump(const PlanarDomain& domain, cplx center, double radius);

/// Same bump without a domain check.
TestFunction bump(cplx center, double radius);

/// All monomials z^a conj(z)^b with a + b <= max_degree, ordered by degree.
std::vector<TestFunction> family_polynomial(int max_degree);

/// Returns f with its ∂^a ∂̄^b derivative multiplied by `factor` (fault injection).
TestFunction with_corrupted_derivative(const TestFunction& f, int a, int b, double factor);

/// Squared Frobenius norm of the real j-th derivative tensor from Wirtinger data:
/// |∇^j f|² = 2^j Σ_{a+b=j} C(j,a) |∂^a ∂̄^b f|². `by_a[a]` holds ∂^a ∂̄^{j-a} f.
double real_derivative_norm_sq(std::span<const cplx> by_a);

struct FdCheckReport {
  double max_error = 0.0;
  int worst_a = 0;
  int worst_b = 0;
  cplx worst_point{};
  int comparisons = 0;
  bool passed = true;
};

/// Compares every supplied ∂^a ∂̄^b (1 <= a+b <= max_order) against central
/// differences of the next-lower derivative at `samples` points drawn from the
/// disc |z - center| < radius. Error is |fd - exact| / max(1, |exact|).
/// max_order < 0 means min(k_max, 3).
FdCheckReport fd_check(const TestFunction& f, int samples, cplx center, double radius,
                       std::uint64_t seed = 1, int max_order = -1, double step = 1e-5,
                       double flag_threshold = 1e-5);

}  // namespace psio
