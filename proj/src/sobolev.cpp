#include "planar_sio/sobolev.hpp"

#include <cmath>
#include <optional>
#include <sstream>

namespace psio {

namespace {

void require_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw PreconditionError("norm exponent p must satisfy 1 < p < inf");
}

std::vector<double> weight_at_nodes(const Weight& weight, const DomainQuadrature& rule) {
  std::vector<double> mu(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) mu[i] = weight(rule.nodes[i]);
  return mu;
}

void check_finite(double contribution, const DomainQuadrature& rule, std::size_t i, double mu) {
  if (!std::isfinite(contribution)) {
    std::ostringstream os;
    os.precision(17);
    os << "weighted norm contribution is not finite at node (" << rule.nodes[i].real() << ", "
       << rule.nodes[i].imag() << ") with weight value " << mu;
    throw QuadratureError(os.str());
  }
}

}  // namespace

DomainQuadrature norm_rule(const PlanarDomain& domain, const QuadratureSpec& spec, double delta,
                           const Weight& weight) {
  std::optional<cplx> center;
  if (!weight.singular_points().empty()) center = weight.singular_points().front();
  return region_rule(domain, spec, delta, center);
}

double weighted_lp_norm(std::span<const cplx> values, const Weight& weight, double p,
                        const DomainQuadrature& rule) {
  require_p(p);
  if (values.size() != rule.size()) throw PreconditionError("weighted_lp_norm: value count mismatch");
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double mu = weight(rule.nodes[i]);
    const double c = rule.weights[i] * std::pow(std::abs(values[i]), p) * mu;
    check_finite(c, rule, i, mu);
    acc.add(c);
  }
  return std::pow(acc.value(), 1.0 / p);
}

double weighted_lp_norm(const std::function<cplx(cplx)>& f, const Weight& weight, double p,
                        const DomainQuadrature& rule) {
  std::vector<cplx> v(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) v[i] = f(rule.nodes[i]);
  return weighted_lp_norm(v, weight, p, rule);
}

WirtingerSamples sample_wirtinger(const TestFunction& f, int k, const DomainQuadrature& rule) {
  if (k < 0) throw PreconditionError("sample_wirtinger: negative order");
  if (!f.is_zero() && k > f.k_max()) {
    throw PreconditionError("sample_wirtinger: " + f.label() + " has derivatives only to order " +
                            std::to_string(f.k_max()));
  }
  WirtingerSamples s;
  s.by_order.resize(k + 1);
  for (int j = 0; j <= k; ++j) {
    s.by_order[j].assign(j + 1, std::vector<cplx>(rule.size()));
    for (int a = 0; a <= j; ++a) f.wirtinger(a, j - a, rule.nodes, s.by_order[j][a]);
  }
  return s;
}

WeightedNorm weighted_sobolev_norm(const WirtingerSamples& data, const Weight& weight, double p,
                                   const DomainQuadrature& rule) {
  require_p(p);
  if (data.by_order.empty()) throw PreconditionError("weighted_sobolev_norm: no derivative data");
  WeightedNorm out;
  out.p = p;
  out.k = data.k();
  out.weight = weight.descriptor();
  out.delta = rule.delta;
  const std::vector<double> mu = weight_at_nodes(weight, rule);
  std::vector<cplx> by_a;
  CompensatedSum<double> total;
  for (int j = 0; j <= data.k(); ++j) {
    const auto& order = data.by_order[j];
    if (static_cast<int>(order.size()) != j + 1) {
      throw PreconditionError("weighted_sobolev_norm: order " + std::to_string(j) + " data is incomplete");
    }
    CompensatedSum<double> acc;
    by_a.resize(j + 1);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      for (int a = 0; a <= j; ++a) by_a[a] = order[a][i];
      const double grad_sq = real_derivative_norm_sq(by_a);
      const double c = rule.weights[i] * std::pow(grad_sq, 0.5 * p) * mu[i];
      check_finite(c, rule, i, mu[i]);
      acc.add(c);
    }
    out.per_order.push_back(acc.value());
    total.add(acc.value());
  }
  out.value = std::pow(total.value(), 1.0 / p);
  return out;
}

WeightedNorm weighted_sobolev_norm(const TestFunction& f, const Weight& weight, double p, int k,
                                   const DomainQuadrature& rule) {
  return weighted_sobolev_norm(sample_wirtinger(f, k, rule), weight, p, rule);
}

}  // namespace psio
