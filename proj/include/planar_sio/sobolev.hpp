#pragma once

// Weighted L^p and W^{k,p} norms on D or D_δ:
//   ‖f‖_{W^{k,p}(μ)} = (Σ_{j<=k} ∫ |∇^j f|^p μ dV)^{1/p},
// with |∇^j f| the Frobenius norm of the real j-th derivative tensor
// (see real_derivative_norm_sq).

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "planar_sio/functions.hpp"
#include "planar_sio/quadrature.hpp"
#include "planar_sio/weights.hpp"

namespace psio {

/// Area rule for D_δ, graded toward the weight's first singular point.
DomainQuadrature norm_rule(const PlanarDomain& domain, const QuadratureSpec& spec, double delta,
                           const Weight& weight);

/// (∫ |f|^p μ dV)^{1/p}. Throws QuadratureError naming the node and weight
/// value when a contribution is not finite.
double weighted_lp_norm(const std::function<cplx(cplx)>& f, const Weight& weight, double p,
                        const DomainQuadrature& rule);
double weighted_lp_norm(std::span<const cplx> values, const Weight& weight, double p,
                        const DomainQuadrature& rule);

/// Wirtinger derivative data at the nodes of a rule:
/// by_order[j][a][i] = ∂^a ∂̄^{j-a} f(node_i), 0 <= a <= j <= k.
struct WirtingerSamples {
  std::vector<std::vector<std::vector<cplx>>> by_order;
  int k() const { return static_cast<int>(by_order.size()) - 1; }
};

/// Samples f's analytic derivatives to order k at the rule's nodes.
WirtingerSamples sample_wirtinger(const TestFunction& f, int k, const DomainQuadrature& rule);

struct WeightedNorm {
  double p = 2.0;
  int k = 0;
  std::string weight;
  double delta = 0.0;
  double value = 0.0;
  std::vector<double> per_order;  // ∫ |∇^j f|^p μ dV, j = 0..k
};

WeightedNorm weighted_sobolev_norm(const WirtingerSamples& data, const Weight& weight, double p,
                                   const DomainQuadrature& rule);
WeightedNorm weighted_sobolev_norm(const TestFunction& f, const Weight& weight, double p, int k,
                                   const DomainQuadrature& rule);

}  // namespace psio
