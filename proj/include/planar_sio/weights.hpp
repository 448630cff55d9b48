#pragma once

// Power weights |z - z0|^α and a sampled estimator of the Muckenhoupt A_p
// constant  sup_B (avg_B μ)(avg_B μ^{1/(1-p)})^{p-1}.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "planar_sio/geometry.hpp"
#include "planar_sio/numeric.hpp"

namespace psio {

/// μ(z) = scale · |z - z0|^α. The constant weight is α = 0.
class Weight {
 public:
  Weight() = default;
  Weight(double alpha, cplx z0, double scale = 1.0);

  double operator()(cplx z) const { return eval(z); }
  double eval(cplx z) const;
  /// μ(singular_points()[i] + offset), without forming the sum.
  double eval_near(std::size_t i, cplx offset) const;

  /// Points where μ vanishes or is infinite.
  const std::vector<cplx>& singular_points() const { return singular_; }
  std::string descriptor() const;

  double alpha() const { return alpha_; }
  cplx z0() const { return z0_; }
  double scale() const { return scale_; }
  bool is_constant() const { return alpha_ == 0.0; }

  /// c·μ.
  Weight scaled(double c) const;
  /// μ^e.
  Weight power(double e) const;

 private:
  double alpha_ = 0.0;
  cplx z0_{};
  double scale_ = 1.0;
  std::vector<cplx> singular_;
};

Weight make_constant_weight(double c = 1.0);
Weight make_power_weight(double alpha, cplx z0);

/// Disc population and per-disc resolution for estimate_Ap.
///   random_discs     centres uniform in `centers`, radii log-uniform in [r_min, r_max]
///   singular_radii   log-spaced radii of the deterministic discs at each singular point
///   n_theta/n_radial base resolution; doubled until both averages agree to `tolerance`
struct DiscSampler {
  int random_discs = 10000;
  std::uint64_t seed = 1;
  Box centers{-1.0, 1.0, -1.0, 1.0};
  double r_min = 2e-3;
  double r_max = 2.0;
  int singular_radii = 8;
  int n_theta = 64;
  int n_radial = 16;
  double tolerance = 1e-6;
  int max_doublings = 5;
};

/// Centres in 2× the bounding box of D, radii in [1e-3, 1]·diam(D).
DiscSampler default_sampler(const PlanarDomain& domain, int random_discs = 10000,
                            std::uint64_t seed = 1);

struct DiscProduct {
  cplx center{};
  double radius = 0.0;
  double avg_weight = 0.0;
  double avg_dual = 0.0;  // average of μ^{1/(1-p)}
  double value = 0.0;     // avg_weight · avg_dual^{p-1}
  bool converged = true;
  bool divergent = false;  // an average is infinite (non-integrable singularity)
};

/// The A_p product on one disc. Discs containing a singular point are
/// integrated in polar coordinates about it with geometric radial shells.
DiscProduct disc_product(const Weight& w, double p, cplx center, double radius,
                         const DiscSampler& resolution = {});

struct ApEstimate {
  double p = 2.0;
  double value = 1.0;  // running sup; +inf when divergent
  int discs_sampled = 0;
  std::vector<std::pair<int, double>> refinement_trace;  // (discs so far, running sup)
  std::vector<DiscProduct> singular_discs;
  int unconverged_discs = 0;
  bool divergent = false;
};

/// Lower bound of A_p(μ) over the sampled discs. Throws PreconditionError for p <= 1.
/// The deterministic singular-point discs come first, then the random ones.
ApEstimate estimate_Ap(const Weight& w, double p, const DiscSampler& sampler);

}  // namespace psio
