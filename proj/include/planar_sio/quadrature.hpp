#pragma once

// Integration over D (or the shrunken region D_δ), over bD, and principal
// value integration of the Beurling kernel 1/(ζ - z)².

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "planar_sio/functions.hpp"
#include "planar_sio/geometry.hpp"

namespace psio {

/// Resolution knobs shared by all experiments.
///   N           angular nodes of polar meshes (radial counts derive from it)
///   M           boundary nodes
///   delta_frac  standoff from bD, as a fraction of diam(D)
///   grading     radial grading exponent q in r = R u^q
struct QuadratureSpec {
  int N = 256;
  int M = 1024;
  double delta_frac = 0.02;
  double grading = 2.0;

  int stencil_radial() const { return std::max(8, N / 8); }
  int region_radial() const { return std::max(8, N / 4); }
  QuadratureSpec refined() const { return {2 * N, 2 * M, delta_frac, grading}; }
};

/// Node/weight set approximating ∫ g dV over D or D_δ. Built as a polar mesh
/// about `center`; offsets[i] = nodes[i] - center is kept exactly so kernels
/// in ζ - center never suffer cancellation.
struct DomainQuadrature {
  cplx center{};
  std::vector<cplx> offsets;
  std::vector<cplx> nodes;
  std::vector<double> weights;
  int n_theta = 0;
  int n_radial = 0;
  double grading = 1.0;
  double delta = 0.0;

  std::size_t size() const { return nodes.size(); }
  double total_weight() const;
};

/// Polar mesh of D_δ about `center` (which must lie in D_δ). Angles use the
/// periodic trapezoid rule when the region is smooth, otherwise Gauss sectors
/// split at the domain's ray breakpoints.
DomainQuadrature polar_rule(const PlanarDomain& domain, cplx center, int n_theta, int n_radial,
                            double grading, double delta = 0.0);

/// Area rule for D_δ at the spec's region resolution. The mesh is centred at
/// `grading_center` when it lies inside D_δ (e.g. a weight singularity), else at
/// the centre of the bounding box.
DomainQuadrature region_rule(const PlanarDomain& domain, const QuadratureSpec& spec,
                             double delta, std::optional<cplx> grading_center = std::nullopt);

/// Σ w_i g(node_i), compensated. Throws QuadratureError naming the first
/// node where g is not finite.
cplx integrate_domain(const std::function<cplx(cplx)>& g, const DomainQuadrature& rule);

/// Boundary nodes with cached curve derivatives ζ^{(j)}(s_i), j <= derivative_order.
/// Smooth curves: M-point periodic trapezoid rule. Curves with corners: Gauss
/// panels per edge, geometrically graded toward every corner (no node sits on a corner).
struct BoundaryQuadrature {
  std::vector<double> s;
  std::vector<double> weights;
  std::vector<std::vector<cplx>> derivs;  // derivs[j][i] = ζ^{(j)}(s_i)
  double length = 0.0;
  int resolution = 0;

  std::size_t size() const { return s.size(); }
  const std::vector<cplx>& points() const { return derivs[0]; }
  const std::vector<cplx>& tangents() const { return derivs[1]; }
  int derivative_order() const { return static_cast<int>(derivs.size()) - 1; }
};

BoundaryQuadrature boundary_rule(const BoundaryCurve& curve, int M, int derivative_order = 3);

enum class BoundaryMeasure { ds, dzeta, dzetabar };

/// ∮ g(ζ) dμ with dμ = ds, ζ' ds or conj(ζ') ds.
cplx integrate_boundary(const std::function<cplx(cplx)>& g, const BoundaryQuadrature& rule,
                        BoundaryMeasure measure);

/// Contour reductions of the two solid kernels (Stokes' theorem applied to conj(ζ)):
///   ∫_D dV/(ζ - z)        = (1/2i) ∮ (conj ζ - conj z)/(ζ - z) dζ
///   p.v.∫_D dV/(ζ - z)²   = (1/2i) ∮ conj ζ /(ζ - z)² dζ
cplx cauchy_kernel_area_integral(const BoundaryQuadrature& rule, cplx z);
cplx beurling_kernel_pv_integral(const BoundaryQuadrature& rule, cplx z);

struct PvResult {
  cplx value{};
  bool used_excision = false;  // fallback path: reduced accuracy
  double extrapolation_gap = 0.0;
};

/// p.v. ∫_D f(ζ)/(ζ - z)² dV.
/// Subtraction path (f has first derivatives): ∫ (f - f(z))/(ζ - z)² on a
/// polar stencil about z, plus f(z) times the contour-reduced kernel integral.
/// Fallback (k_max = 0): symmetric excision with Richardson extrapolation in ε.
/// Throws PreconditionError if z is closer than spec.delta_frac·diam to bD.
PvResult integrate_pv(const TestFunction& f, cplx z, const PlanarDomain& domain,
                      const QuadratureSpec& spec);

/// ∫_{D \ B_ε(z)} f(ζ)/(ζ - z)² dV, optionally clipped to |ζ - z| < outer.
/// Radial nodes are log-graded, r = ε (R/ε)^u.
cplx excised_integral(const TestFunction& f, cplx z, const PlanarDomain& domain, double eps,
                      int n_theta, int n_radial, std::optional<double> outer = std::nullopt);

/// Symmetric excision at ε_j = eps0·2^{-j}, j < levels, followed by a
/// Richardson table in powers of ε. Returns the final extrapolate and the
/// gap between the last two diagonal entries.
PvResult excision_pv(const TestFunction& f, cplx z, const PlanarDomain& domain,
                     const QuadratureSpec& spec, double eps0, int levels = 7);

/// Throws PreconditionError when z is not an interior point at least
/// spec.delta_frac·diam(D) away from bD.
void require_standoff(const PlanarDomain& domain, cplx z, const QuadratureSpec& spec);

}  // namespace psio
