#include "planar_sio/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace psio {

namespace {

struct AngleNode {
  double theta;
  double weight;
};

std::vector<AngleNode> angular_nodes(const std::vector<double>& breakpoints, int n_theta) {
  std::vector<AngleNode> out;
  if (breakpoints.empty()) {
    out.reserve(n_theta);
    for (int j = 0; j < n_theta; ++j) out.push_back({2.0 * kPi * j / n_theta, 2.0 * kPi / n_theta});
    return out;
  }
  const std::size_t k = breakpoints.size();
  for (std::size_t i = 0; i < k; ++i) {
    const double a = breakpoints[i];
    double b = breakpoints[(i + 1) % k];
    if (i + 1 == k) b += 2.0 * kPi;
    const double width = b - a;
    if (width <= 0.0) continue;
    const int n = std::max(4, static_cast<int>(std::lround(n_theta * width / (2.0 * kPi))));
    const GaussRule& g = gauss_legendre(n);
    for (int j = 0; j < n; ++j) {
      out.push_back({a + 0.5 * width * (g.nodes[j] + 1.0), 0.5 * width * g.weights[j]});
    }
  }
  return out;
}

std::string describe_point(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

}  // namespace

double DomainQuadrature::total_weight() const {
  CompensatedSum<double> acc;
  for (double w : weights) acc.add(w);
  return acc.value();
}

DomainQuadrature polar_rule(const PlanarDomain& domain, cplx center, int n_theta, int n_radial,
                            double grading, double delta) {
  if (n_theta < 1 || n_radial < 1) throw PreconditionError("polar_rule: empty resolution");
  if (!domain.in_shrunken(center, delta)) {
    throw PreconditionError("polar_rule: centre " + describe_point(center) +
                            " is not inside the region of " + domain.label());
  }
  DomainQuadrature rule;
  rule.center = center;
  rule.n_theta = n_theta;
  rule.n_radial = n_radial;
  rule.grading = grading;
  rule.delta = delta;
  const auto angles = angular_nodes(domain.ray_breakpoints(center, delta), n_theta);
  const GaussRule& g = gauss_legendre(n_radial);
  rule.offsets.reserve(angles.size() * n_radial);
  rule.weights.reserve(angles.size() * n_radial);
  for (const auto& an : angles) {
    const double R = domain.ray_exit(center, an.theta, delta);
    const cplx dir = std::polar(1.0, an.theta);
    for (int k = 0; k < n_radial; ++k) {
      const double u = 0.5 * (g.nodes[k] + 1.0);
      const double wu = 0.5 * g.weights[k];
      const double r = R * std::pow(u, grading);
      const double dr = grading * R * std::pow(u, grading - 1.0);
      rule.offsets.push_back(r * dir);
      rule.weights.push_back(an.weight * wu * dr * r);
    }
  }
  rule.nodes.resize(rule.offsets.size());
  for (std::size_t i = 0; i < rule.offsets.size(); ++i) rule.nodes[i] = center + rule.offsets[i];
  return rule;
}

DomainQuadrature region_rule(const PlanarDomain& domain, const QuadratureSpec& spec, double delta,
                             std::optional<cplx> grading_center) {
  cplx center;
  if (grading_center && domain.in_shrunken(*grading_center, delta)) {
    center = *grading_center;
  } else {
    const Box b = domain.bounding_box();
    center = cplx(0.5 * (b.xmin + b.xmax), 0.5 * (b.ymin + b.ymax));
  }
  return polar_rule(domain, center, spec.N, spec.region_radial(), spec.grading, delta);
}

cplx integrate_domain(const std::function<cplx(cplx)>& g, const DomainQuadrature& rule) {
  CompensatedSum<cplx> acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const cplx v = g(rule.nodes[i]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw QuadratureError("integrate_domain: integrand is not finite at node " +
                            describe_point(rule.nodes[i]));
    }
    acc.add(rule.weights[i] * v);
  }
  return acc.value();
}

BoundaryQuadrature boundary_rule(const BoundaryCurve& curve, int M, int derivative_order) {
  if (M < 4) throw PreconditionError("boundary_rule: need at least 4 nodes");
  BoundaryQuadrature rule;
  rule.length = curve.length();
  rule.resolution = M;
  const auto corners = curve.corners();
  if (corners.empty()) {
    rule.s.resize(M);
    rule.weights.assign(M, rule.length / M);
    for (int i = 0; i < M; ++i) rule.s[i] = rule.length * i / M;
  } else {
    // Gauss panels per edge, algebraically graded (t/L)^3 toward both ends.
    constexpr int kGauss = 8;
    constexpr double kGradePower = 3.0;
    const int edges = static_cast<int>(corners.size());
    const int half_panels = std::max(1, M / (edges * 2 * kGauss));
    const GaussRule& g = gauss_legendre(kGauss);
    for (int e = 0; e < edges; ++e) {
      const double a = corners[e];
      const double b = (e + 1 < edges) ? corners[e + 1] : corners[0] + rule.length;
      const double half = 0.5 * (b - a);
      std::vector<double> breaks;
      for (int k = 0; k <= half_panels; ++k) {
        breaks.push_back(a + half * std::pow(static_cast<double>(k) / half_panels, kGradePower));
      }
      for (int k = half_panels - 1; k >= 0; --k) {
        breaks.push_back(b - half * std::pow(static_cast<double>(k) / half_panels, kGradePower));
      }
      for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double lo = breaks[p];
        const double hi = breaks[p + 1];
        if (hi <= lo) continue;
        for (int j = 0; j < kGauss; ++j) {
          rule.s.push_back(std::fmod(lo + 0.5 * (hi - lo) * (g.nodes[j] + 1.0), rule.length));
          rule.weights.push_back(0.5 * (hi - lo) * g.weights[j]);
        }
      }
    }
  }
  const int order = std::clamp(derivative_order, 1, curve.smoothness());
  rule.derivs.assign(order + 1, std::vector<cplx>(rule.s.size()));
  for (std::size_t i = 0; i < rule.s.size(); ++i) {
    for (int j = 0; j <= order; ++j) rule.derivs[j][i] = curve.derivative(rule.s[i], j);
  }
  return rule;
}

cplx integrate_boundary(const std::function<cplx(cplx)>& g, const BoundaryQuadrature& rule,
                        BoundaryMeasure measure) {
  CompensatedSum<cplx> acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const cplx z = rule.points()[i];
    cplx dm = rule.weights[i];
    if (measure == BoundaryMeasure::dzeta) dm *= rule.tangents()[i];
    if (measure == BoundaryMeasure::dzetabar) dm *= std::conj(rule.tangents()[i]);
    const cplx v = g(z);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw QuadratureError("integrate_boundary: integrand is not finite at " + describe_point(z));
    }
    acc.add(v * dm);
  }
  return acc.value();
}

cplx cauchy_kernel_area_integral(const BoundaryQuadrature& rule, cplx z) {
  CompensatedSum<cplx> acc;
  const cplx zb = std::conj(z);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const cplx d = rule.points()[i] - z;
    acc.add(rule.weights[i] * (std::conj(rule.points()[i]) - zb) / d * rule.tangents()[i]);
  }
  return acc.value() / (2.0 * kI);
}

cplx beurling_kernel_pv_integral(const BoundaryQuadrature& rule, cplx z) {
  CompensatedSum<cplx> acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const cplx d = rule.points()[i] - z;
    acc.add(rule.weights[i] * std::conj(rule.points()[i]) / (d * d) * rule.tangents()[i]);
  }
  return acc.value() / (2.0 * kI);
}

void require_standoff(const PlanarDomain& domain, cplx z, const QuadratureSpec& spec) {
  const double dmin = spec.delta_frac * domain.diameter();
  if (!domain.contains(z) || domain.distance_to_boundary(z) < dmin * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "target " << describe_point(z) << " violates the standoff delta_min = " << dmin
       << " (delta_frac " << spec.delta_frac << " of diam) from the boundary of "
       << domain.label() << "; move the target inward or lower delta_frac";
    throw PreconditionError(os.str());
  }
}

cplx excised_integral(const TestFunction& f, cplx z, const PlanarDomain& domain, double eps,
                      int n_theta, int n_radial, std::optional<double> outer) {
  const auto angles = angular_nodes(domain.ray_breakpoints(z, 0.0), n_theta);
  const GaussRule& g = gauss_legendre(n_radial);
  CompensatedSum<cplx> acc;
  for (const auto& an : angles) {
    double R = domain.ray_exit(z, an.theta, 0.0);
    if (outer) R = std::min(R, *outer);
    if (R <= eps) continue;
    const cplx dir = std::polar(1.0, an.theta);
    const double logratio = std::log(R / eps);
    const cplx phase = std::conj(dir * dir);
    cplx radial = 0.0;
    for (int k = 0; k < n_radial; ++k) {
      const double u = 0.5 * (g.nodes[k] + 1.0);
      const double r = eps * std::exp(u * logratio);
      radial += 0.5 * g.weights[k] * f(z + r * dir);
    }
    acc.add(an.weight * logratio * phase * radial);
  }
  return acc.value();
}

PvResult excision_pv(const TestFunction& f, cplx z, const PlanarDomain& domain,
                     const QuadratureSpec& spec, double eps0, int levels) {
  std::vector<std::vector<cplx>> table(levels, std::vector<cplx>(levels));
  const int n_radial = std::max(16, spec.stencil_radial() * 2);
  for (int j = 0; j < levels; ++j) {
    table[j][0] = excised_integral(f, z, domain, eps0 * std::ldexp(1.0, -j), spec.N, n_radial);
    for (int m = 1; m <= j; ++m) {
      const double factor = std::ldexp(1.0, m) - 1.0;
      table[j][m] = table[j][m - 1] + (table[j][m - 1] - table[j - 1][m - 1]) / factor;
    }
  }
  PvResult out;
  out.value = table[levels - 1][levels - 1];
  out.used_excision = true;
  out.extrapolation_gap =
      levels > 1 ? std::abs(table[levels - 1][levels - 1] - table[levels - 2][levels - 2]) : 0.0;
  return out;
}

PvResult integrate_pv(const TestFunction& f, cplx z, const PlanarDomain& domain,
                      const QuadratureSpec& spec) {
  require_standoff(domain, z, spec);
  if (f.is_zero()) return {};
  if (f.k_max() < 1) {
    const double eps0 = std::min(0.25, 0.5 * domain.distance_to_boundary(z));
    return excision_pv(f, z, domain, spec, eps0);
  }
  const DomainQuadrature stencil =
      polar_rule(domain, z, spec.N, spec.stencil_radial(), spec.grading, 0.0);
  const cplx fz = f(z);
  CompensatedSum<cplx> acc;
  for (std::size_t i = 0; i < stencil.size(); ++i) {
    const cplx d = stencil.offsets[i];
    acc.add(stencil.weights[i] * (f(stencil.nodes[i]) - fz) / (d * d));
  }
  const BoundaryQuadrature brule = boundary_rule(domain.boundary(), spec.M, 1);
  PvResult out;
  out.value = acc.value() + fz * beurling_kernel_pv_integral(brule, z);
  return out;
}

}  // namespace psio
