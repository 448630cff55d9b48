#pragma once

// Verification studies: identity-residual suites, operator-norm ratio
// studies, the square-corner blow-up fit and convergence tables.

#include <cstdint>
#include <string>
#include <vector>

#include "planar_sio/sobolev.hpp"
#include "planar_sio/transforms.hpp"
#include "planar_sio/weights.hpp"

namespace psio {

/// n interior points with dist(z, bD) >= standoff. The first n/5 lie in the
/// band [standoff, 2·standoff], the rest anywhere in D_standoff.
std::vector<cplx> sample_targets(const PlanarDomain& domain, int n, double standoff,
                                 std::uint64_t seed);

/// The first n monomials of family_polynomial, in degree order.
std::vector<TestFunction> ratio_family(int n);

// ---------------------------------------------------------------- identities

struct IdentityTolerances {
  double cauchy_green = 1e-5;  // S f - f + T(∂̄f)
  double dz_s = 1e-4;          // S̃ f + H(∂̄f) - ∂f
  double recursion = 1e-5;     // H f - T(∂f) + L f
  double ls = 1e-8;            // L f - S(conj(ζ')² f)
  double dbar_t = 1e-5;        // central-difference ∂̄(T f) - f
  double tangential = 1e-3;    // central-difference ∂(S̃ f) vs S̃(f̃), relative
};

enum class Fault { none, flip_L_sign };

struct IdentitySuiteConfig {
  int targets = 50;
  std::uint64_t seed = 1;
  IdentityTolerances tol;
  Fault fault = Fault::none;
  double fd_step = 1e-4;
  int tangential_functions = 10;
  int tangential_targets = 20;
};

struct IdentityRow {
  std::string identity;
  std::string function;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  cplx worst_target{};
  double tolerance = 0.0;
  bool passed = true;
};

struct IdentityReport {
  std::string domain;
  int N = 0;
  int M = 0;
  std::vector<IdentityRow> rows;
  bool fd_prechecks_passed = true;
  bool passed = true;
  std::string first_failure;  // "identity / function / worst target"
};

IdentityReport run_identity_suite(DomainPtr domain, const std::vector<TestFunction>& family,
                                  const QuadratureSpec& spec, const IdentitySuiteConfig& config = {});

// --------------------------------------------------------------- ratio study

/// Operator and norm pairing:  H: W^{k,p} → W^{k,p}   T: W^{k,p} → W^{k+1,p}
///                             S: W^{k,p} → W^{k,p}, k >= 1   S̃: W^{1,p} → L^p
struct RatioCase {
  Operator op = Operator::H;
  int k = 0;
  Weight weight;
  double p = 2.0;
};

struct RatioStudyConfig {
  double stability_unweighted = 0.05;
  double stability_weighted = 0.10;
};

struct RatioStudy {
  Operator op = Operator::H;
  std::string domain;
  std::string weight;
  double alpha = 0.0;
  double p = 2.0;
  int k_in = 0;
  int k_out = 0;
  int N = 0;
  std::vector<std::string> labels;
  std::vector<double> numerators_N;
  std::vector<double> denominators;
  std::vector<double> ratios_N;
  std::vector<double> ratios_2N;
  double sup_N = 0.0;
  double sup_2N = 0.0;
  double stability = 0.0;  // |sup_N - sup_2N| / sup_N
  double threshold = 0.0;
  bool weight_in_Ap_range = true;
  bool passed = false;
};

/// Throws PreconditionError for an invalid (op, k) pairing or a family of
/// fewer than 10 functions. A weight outside -2 < α < 2(p-1) only clears
/// weight_in_Ap_range.
std::vector<RatioStudy> run_ratio_studies(DomainPtr domain, const std::vector<TestFunction>& family,
                                          const QuadratureSpec& spec,
                                          const std::vector<RatioCase>& cases,
                                          const RatioStudyConfig& config = {});

RatioStudy run_ratio_study(const RatioCase& c, DomainPtr domain,
                           const std::vector<TestFunction>& family, const QuadratureSpec& spec,
                           const RatioStudyConfig& config = {});

/// Field rule for transform outputs on D_δ: max(16, N/8) × max(8, N/32) nodes,
/// graded toward the weight's singular point.
DomainQuadrature field_rule(const PlanarDomain& domain, const QuadratureSpec& spec,
                            const Weight& weight);

// ------------------------------------------------------------- corner blowup

struct BlowupConfig {
  int points = 12;
  double d_min = 0.005;
  double d_max = 0.2;
  int M = 1024;
  double beta_lo = 0.8;
  double beta_hi = 1.2;
  double r2_min = 0.98;
  double beta_shift_max = 0.05;
  double control_tol = 1e-8;
};

struct BlowupFit {
  cplx vertex{};
  std::vector<double> distances;  // strictly decreasing
  std::vector<double> values;     // |∂H(1)| along the inward diagonal
  std::vector<double> values_2M;
  double beta = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double beta_2M = 0.0;
  double beta_shift = 0.0;
  bool conclusive = false;  // R² above threshold
  std::vector<double> control_values;  // |∂H(1)| on the disc at the same distances
  double control_max = 0.0;
  int control_M = 0;
  bool control_passed = false;
  bool passed = false;
};

BlowupFit run_corner_blowup(const BlowupConfig& config = {});

// --------------------------------------------------------- convergence table

struct ConvergenceRow {
  std::string example;
  std::string knob;  // "M" or "N"
  int resolution = 0;
  cplx value{};
  cplx exact{};
  double error = 0.0;
  double order = 0.0;  // log2(e_prev / e) against the previous row of the example; 0 on the first
  bool flagged = false;
};

struct ConvergenceConfig {
  std::vector<int> M_values{8, 16, 32, 64, 128};
  std::vector<int> N_values{4, 8, 16, 32, 64};
  double noise_floor = 1e-13;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  bool passed = true;
  std::string failure;
};

ConvergenceReport run_convergence_report(const ConvergenceConfig& config = {});

// ------------------------------------------------------------- A_p estimates

struct ApRow {
  std::string weight;
  double alpha = 0.0;
  double p = 2.0;
  ApEstimate estimate;
};

std::vector<ApRow> run_ap_estimates(const std::vector<Weight>& weights, const std::vector<double>& ps,
                                    const DiscSampler& sampler);

}  // namespace psio
