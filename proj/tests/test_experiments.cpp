#include "doctest.h"

#include <cmath>

#include "planar_sio/experiments.hpp"

using namespace psio;

TEST_CASE("sample_targets respects the standoff and the near band") {
  const auto star = make_smooth_star(0.1, 3);
  const double s = 0.05;
  const auto t = sample_targets(*star, 40, s, 3);
  REQUIRE(t.size() == 40);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double d = star->distance_to_boundary(t[i]);
    CHECK(star->contains(t[i]));
    CHECK(d >= s);
    if (i < 8) CHECK(d <= 2 * s);
  }
  CHECK(sample_targets(*star, 40, s, 3) == t);
}

TEST_CASE("ratio_family takes monomials in degree order") {
  const auto fam = ratio_family(20);
  REQUIRE(fam.size() == 20);
  CHECK(fam.front().label() == family_polynomial(0).front().label());
  CHECK_THROWS_AS(ratio_family(0), PreconditionError);
}

TEST_CASE("identity suite passes on disc and star") {
  IdentitySuiteConfig cfg;
  cfg.targets = 20;
  for (auto d : {make_unit_disc(), make_smooth_star(0.1, 3)}) {
    const auto rep = run_identity_suite(d, family_polynomial(2), {}, cfg);
    INFO(rep.first_failure);
    CHECK(rep.passed);
    CHECK(rep.fd_prechecks_passed);
    CHECK(rep.rows.size() == 6 * family_polynomial(2).size());
  }
}

TEST_CASE("identity residuals vanish for the zero function") {
  IdentitySuiteConfig cfg;
  cfg.targets = 10;
  const auto rep = run_identity_suite(make_unit_disc(), {TestFunction()}, {}, cfg);
  CHECK(rep.passed);
  for (const auto& r : rep.rows) CHECK(r.max_residual == 0.0);
}

TEST_CASE("flipping the sign of L is caught") {
  IdentitySuiteConfig cfg;
  cfg.targets = 10;
  cfg.fault = Fault::flip_L_sign;
  const auto rep = run_identity_suite(make_unit_disc(), family_polynomial(2), {}, cfg);
  CHECK_FALSE(rep.passed);
  CHECK(rep.first_failure.rfind("recursion", 0) == 0);
  bool ls_failed = false;
  for (const auto& r : rep.rows) ls_failed = ls_failed || (r.identity == "ls" && !r.passed);
  CHECK(ls_failed);
}

TEST_CASE("ratio pairings are validated") {
  const auto disc = make_unit_disc();
  const auto fam = ratio_family(10);
  const auto one = make_constant_weight();
  CHECK_THROWS_AS(run_ratio_study({Operator::L, 0, one, 2.0}, disc, fam, {}), PreconditionError);
  CHECK_THROWS_AS(run_ratio_study({Operator::S, 0, one, 2.0}, disc, fam, {}), PreconditionError);
  CHECK_THROWS_AS(run_ratio_study({Operator::Stilde, 0, one, 2.0}, disc, fam, {}), PreconditionError);
  CHECK_THROWS_AS(run_ratio_study({Operator::H, -1, one, 2.0}, disc, fam, {}), PreconditionError);
  CHECK_THROWS_AS(run_ratio_study({Operator::H, 0, one, 1.0}, disc, fam, {}), PreconditionError);
  CHECK_THROWS_AS(run_ratio_study({Operator::H, 0, one, 2.0}, disc, ratio_family(9), {}), PreconditionError);
}

TEST_CASE("unweighted L2 ratio of H respects the isometry") {
  QuadratureSpec spec;
  spec.N = 128;
  const auto st = run_ratio_study({Operator::H, 0, make_constant_weight(), 2.0}, make_unit_disc(),
                                  ratio_family(10), spec);
  CHECK(st.passed);
  CHECK(st.k_out == 0);
  CHECK(st.sup_N <= 1.0 + 1e-6);
  CHECK(st.weight_in_Ap_range);
  for (double r : st.ratios_N) CHECK(r >= 0.0);
}

TEST_CASE("S and Stilde ratio studies are stable on the star") {
  QuadratureSpec spec;
  spec.N = 128;
  const auto one = make_constant_weight();
  const auto st = run_ratio_studies(make_smooth_star(0.1, 3), ratio_family(10), spec,
                                    {{Operator::S, 1, one, 2.0}, {Operator::Stilde, 1, one, 2.0}});
  REQUIRE(st.size() == 2);
  CHECK(st[0].k_out == 1);
  CHECK(st[1].k_in == 1);
  CHECK(st[1].k_out == 0);
  for (const auto& s : st) CHECK(s.passed);
}

TEST_CASE("weights outside the A_p range are marked") {
  QuadratureSpec spec;
  spec.N = 64;
  const auto st = run_ratio_study({Operator::H, 0, make_power_weight(2.5, 0.0), 2.0}, make_unit_disc(),
                                  ratio_family(10), spec);
  CHECK_FALSE(st.weight_in_Ap_range);
}

TEST_CASE("square corner blow-up of dH(1) is order one") {
  const auto fit = run_corner_blowup();
  CHECK(fit.beta >= 0.8);
  CHECK(fit.beta <= 1.2);
  CHECK(fit.r_squared > 0.98);
  CHECK(fit.beta_shift < 0.05);
  CHECK(fit.control_passed);
  CHECK(fit.passed);
  for (std::size_t i = 1; i < fit.distances.size(); ++i) CHECK(fit.distances[i] < fit.distances[i - 1]);
}

TEST_CASE("Stilde on the square matches the per-edge closed form") {
  QuadratureSpec spec;
  spec.delta_frac = 0.001;
  const auto square = make_unit_square();
  const TransformContext ctx(square, spec, 1);
  const cplx v[5] = {0.0, 1.0, cplx(1, 1), cplx(0, 1), 0.0};
  const cplx z(0.3, 0.2);
  // conj(ζ')² is constant on each edge: 1, -1, 1, -1.
  cplx exact = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cplx g = (e % 2 == 0) ? 1.0 : -1.0;
    exact += g * (1.0 / (v[e] - z) - 1.0 / (v[e + 1] - z)) / (2.0 * kPi * kI);
  }
  const auto trace = BoundaryTrace::of(monomial(0, 0)).times_conj_tangent_power(2);
  const auto rule = boundary_rule(square->boundary(), spec.M, 1);
  const TargetKit kit(*square, rule, spec, z, false);
  CHECK(std::abs(kit.Stilde(trace.sample(rule)) - exact) < 1e-10);
  CHECK(std::abs(ctx.derivative_H(monomial(0, 0), z, 1, 0) + exact) < 1e-10);
}

TEST_CASE("blow-up configuration is validated") {
  BlowupConfig c;
  c.points = 4;
  CHECK_THROWS_AS(run_corner_blowup(c), PreconditionError);
  c = {};
  c.d_min = 0.1;
  CHECK_THROWS_AS(run_corner_blowup(c), PreconditionError);
}

TEST_CASE("convergence report shows spectral boundary convergence") {
  const auto rep = run_convergence_report();
  INFO(rep.failure);
  CHECK(rep.passed);
  for (const auto& r : rep.rows) {
    CHECK_FALSE(r.flagged);
    if (r.knob == "M" && r.resolution == 64) CHECK(r.error < 1e-10);
  }
}

TEST_CASE("A_p rows cover every weight and exponent") {
  DiscSampler s;
  s.random_discs = 200;
  const auto rows = run_ap_estimates({make_constant_weight(), make_power_weight(0.5, 0.0)}, {1.5, 2.0}, s);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].estimate.value == 1.0);
  CHECK(rows[3].p == 2.0);
  CHECK(rows[3].estimate.value >= 1.0);
}
