#pragma once

// The solid Cauchy transform T, the truncated Beurling transform H, the
// boundary Cauchy integral S, its derivative S̃, the conjugate-measure
// integral L, and the derivative recursions tying them together.
//
// Measure convention: dζ̄∧dζ = 2i dV, so
//   T f(z) = (1/π) ∫_D f(ζ)/(z - ζ) dV
//   H f(z) = -(1/π) p.v.∫_D f(ζ)/(ζ - z)² dV
//   S g(z) = (1/2πi) ∮ g(ζ)/(ζ - z) dζ
//   S̃ g(z) = (1/2πi) ∮ g(ζ)/(ζ - z)² dζ
//   L g(z) = (1/2πi) ∮ g(ζ)/(ζ - z) dζ̄

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "planar_sio/functions.hpp"
#include "planar_sio/quadrature.hpp"

namespace psio {

/// Maximum curve derivative order a boundary trace may reference.
inline constexpr int kMaxTraceCurveOrder = 8;

/// Symbolic boundary function s ↦ Σ c · Π (ζ^{(j)})^{p_j} (conj ζ^{(j)})^{q_j} · ∂^a ∂̄^b f(ζ(s)).
///
/// Closed under the tangential map τ g = conj(ζ') dg/ds, which is what the
/// derivative of S̃ turns into after integrating by parts along bD.
class BoundaryTrace {
 public:
  struct Term {
    cplx coeff;
    int a;
    int b;
    std::array<std::int8_t, 2 * kMaxTraceCurveOrder> powers;  // [j-1]: ζ^{(j)}, [K+j-1]: conj
  };

  BoundaryTrace() = default;

  /// The restriction f|bD.
  static BoundaryTrace of(const TestFunction& f);

  /// conj(ζ')^n · this.
  BoundaryTrace times_conj_tangent_power(int n) const;

  /// τ(this) = conj(ζ') d/ds (this).
  BoundaryTrace tangential() const;

  /// Wirtinger order of f and curve derivative order needed to evaluate.
  int function_order() const;
  int curve_order() const;

  const TestFunction& function() const { return f_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Values at the nodes of `rule`. Throws GeometryError if the rule lacks the
  /// curve derivatives this trace needs, PreconditionError if f lacks the
  /// Wirtinger orders.
  std::vector<cplx> sample(const BoundaryQuadrature& rule) const;

  /// Value at a single node of `rule`.
  cplx value_at(const BoundaryQuadrature& rule, std::size_t i) const;

 private:
  void add_term(const Term& t);
  void simplify();

  TestFunction f_;
  std::vector<Term> terms_;
};

/// f̃ = ∂f + conj(ζ')² ∂̄f on bD.
BoundaryTrace build_tilde_f(const TestFunction& f);

enum class Operator { T, H, S, Stilde, L };

std::string to_string(Operator op);
Operator operator_from_string(const std::string& name);

/// Boundary kernels and the polar stencil for one interior target z.
/// Building one costs a stencil (N × N/8 ray/node evaluations); applying it to
/// a function is a pair of dot products.
class TargetKit {
 public:
  TargetKit(const PlanarDomain& domain, const BoundaryQuadrature& rule,
            const QuadratureSpec& spec, cplx z, bool with_stencil = true);

  cplx target() const { return z_; }

  cplx S(std::span<const cplx> samples) const;
  cplx Stilde(std::span<const cplx> samples) const;
  cplx L(std::span<const cplx> samples) const;

  /// T(1)(z) and H(1)(z) from the contour reductions.
  cplx t_of_one() const { return t_one_; }
  cplx h_of_one() const { return h_one_; }

  struct Solid {
    cplx T;
    cplx H;
  };
  /// T f(z) and H f(z) by singularity subtraction on the stencil.
  Solid solid(const TestFunction& f) const;

  /// Same, from precomputed values f(nodes) and f(z).
  Solid solid(std::span<const cplx> node_values, cplx fz) const;

  const DomainQuadrature& stencil() const { return stencil_; }

 private:
  cplx z_;
  std::vector<cplx> k_cauchy_;    // w ζ' / ((ζ - z) 2πi)
  std::vector<cplx> k_beurling_;  // w ζ' / ((ζ - z)² 2πi)
  std::vector<cplx> k_conj_;      // w conj ζ' / ((ζ - z) 2πi)
  cplx t_one_{};
  cplx h_one_{};
  DomainQuadrature stencil_;
  std::vector<cplx> inv_offset_;
  std::vector<cplx> inv_offset_sq_;
};

/// Domain, boundary rule and resolution bundled for repeated evaluation.
class TransformContext {
 public:
  TransformContext(DomainPtr domain, QuadratureSpec spec, int curve_order = 3);

  const PlanarDomain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  const QuadratureSpec& spec() const { return spec_; }
  const BoundaryQuadrature& boundary() const { return rule_; }

  /// Checks the standoff and builds the per-target kit.
  TargetKit kit(cplx z, bool with_stencil = true) const;

  cplx T(const TestFunction& f, cplx z) const;
  cplx H(const TestFunction& f, cplx z) const;
  cplx S(const BoundaryTrace& g, cplx z) const;
  cplx Stilde(const BoundaryTrace& g, cplx z) const;
  cplx L(const BoundaryTrace& g, cplx z) const;
  cplx t_of_one(cplx z) const;
  cplx h_of_one(cplx z) const;

  /// ∂^k S g = S̃(τ^{k-1} g) for k >= 1; S g for k = 0.
  cplx derivative_S(const BoundaryTrace& g, cplx z, int k) const;

  /// ∂^a ∂̄^b T f via ∂̄T f = f and ∂T f = H f.
  cplx derivative_T(const TestFunction& f, cplx z, int a, int b) const;

  /// ∂^a ∂̄^b H f via ∂̄H f = ∂f and ∂H f = H(∂f) - S̃(conj(ζ')² f).
  cplx derivative_H(const TestFunction& f, cplx z, int a, int b) const;

 private:
  DomainPtr domain_;
  QuadratureSpec spec_;
  BoundaryQuadrature rule_;
};

/// Point-evaluation conveniences that build the needed rules on the fly.
cplx compute_T(const TestFunction& f, DomainPtr domain, cplx z, const QuadratureSpec& spec = {});
cplx compute_H(const TestFunction& f, DomainPtr domain, cplx z, const QuadratureSpec& spec = {});
cplx compute_S(const BoundaryTrace& g, DomainPtr domain, cplx z, const QuadratureSpec& spec = {});
cplx compute_Stilde(const BoundaryTrace& g, DomainPtr domain, cplx z, const QuadratureSpec& spec = {});
cplx compute_L(const BoundaryTrace& g, DomainPtr domain, cplx z, const QuadratureSpec& spec = {});
cplx t_of_one(DomainPtr domain, cplx z, const QuadratureSpec& spec = {});
cplx h_of_one(DomainPtr domain, cplx z, const QuadratureSpec& spec = {});

struct TransformRequest {
  Operator op = Operator::T;
  TestFunction f;
  std::vector<cplx> targets;
  QuadratureSpec spec;
  bool check_identity = false;
};

/// Values at the requested targets. When check_identity is set the field
/// carries the largest residual of the identity tied to the operator:
///   T, H: H f - T(∂f) + L f        S: S f - f + T(∂̄f)
///   S̃:   S̃ f + H(∂̄f) - ∂f        L: L f - S(conj(ζ')² f)
struct TransformField {
  Operator op = Operator::T;
  std::vector<cplx> targets;
  std::vector<cplx> values;
  int N = 0;
  int M = 0;
  double identity_residual = 0.0;
  bool identity_checked = false;
};

TransformField evaluate(const TransformRequest& request, DomainPtr domain);

}  // namespace psio
