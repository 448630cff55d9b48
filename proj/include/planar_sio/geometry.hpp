#pragma once

// Bounded planar domains described by a closed, positively oriented,
// arclength-parameterized boundary curve.

#include <memory>
#include <string>
#include <vector>

#include "planar_sio/numeric.hpp"

namespace psio {

struct Box {
  double xmin = 0.0;
  double xmax = 0.0;
  double ymin = 0.0;
  double ymax = 0.0;
};

/// Closed curve ζ(s), s ∈ [0, length()), with |ζ'(s)| = 1 away from corners.
/// Arguments are reduced modulo the length, so every query is periodic.
class BoundaryCurve {
 public:
  virtual ~BoundaryCurve() = default;

  virtual double length() const = 0;
  virtual cplx point(double s) const = 0;

  /// d^j ζ / ds^j. Order 0 is the point itself. Throws GeometryError when the
  /// order exceeds smoothness() or s sits on a corner.
  virtual cplx derivative(double s, int order) const = 0;

  /// Highest derivative order available (the curve is W^{k_max,∞}).
  virtual int smoothness() const = 0;

  /// Arclength positions where ζ' jumps; empty for smooth curves.
  virtual std::vector<double> corners() const { return {}; }

  cplx tangent(double s) const { return derivative(s, 1); }

  /// Outward unit normal -iζ' (positive orientation puts D on the left).
  cplx outward_normal(double s) const { return -kI * tangent(s); }

  bool is_smooth() const { return corners().empty(); }
};

/// Open bounded convex domain. contains() is false on the boundary.
class PlanarDomain {
 public:
  virtual ~PlanarDomain() = default;

  virtual const BoundaryCurve& boundary() const = 0;
  virtual bool contains(cplx z) const = 0;
  virtual double distance_to_boundary(cplx z) const = 0;
  virtual double area() const = 0;
  virtual Box bounding_box() const = 0;
  virtual double diameter() const = 0;
  virtual const std::string& label() const = 0;

  /// Distance from `origin` along direction e^{iθ} to the boundary of the
  /// shrunken region D_δ = {z ∈ D : dist(z, bD) > δ}. `origin` must lie in D_δ.
  virtual double ray_exit(cplx origin, double theta, double delta = 0.0) const;

  /// Ray angles (in [0, 2π)) at which ray_exit(origin, ·, δ) has a kink.
  /// Empty for domains whose shrunken regions have smooth boundaries.
  virtual std::vector<double> ray_breakpoints(cplx origin, double delta) const;

  /// contains(z) && dist(z, bD) > δ.
  bool in_shrunken(cplx z, double delta) const {
    return contains(z) && (delta <= 0.0 || distance_to_boundary(z) > delta);
  }
};

using DomainPtr = std::shared_ptr<const PlanarDomain>;

/// Unit disc, ζ(s) = e^{is}.
DomainPtr make_unit_disc();

/// Polar star r(θ) = 1 + a cos(mθ), reparameterized to arclength.
/// Requires 0 ≤ a ≤ 1/(m²+1) (convex) and m ≥ 1.
DomainPtr make_smooth_star(double a, int m);

/// Unit square with vertices 0, 1, 1+i, i; s is measured from the origin.
DomainPtr make_unit_square();

/// Winding number of the boundary about z by discrete argument accumulation.
int winding_number(const BoundaryCurve& curve, cplx z, int samples = 2048);

}  // namespace psio
