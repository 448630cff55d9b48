#include "doctest.h"

#include <cmath>
#include <random>

#include "planar_sio/sobolev.hpp"

using namespace psio;

TEST_CASE("weighted_lp_norm examples on the unit disc") {
  QuadratureSpec spec;
  const auto disc = make_unit_disc();
  const auto one = make_constant_weight();
  const auto mod = make_power_weight(1.0, 0.0);
  CHECK(std::abs(weighted_lp_norm([](cplx) { return cplx(1.0); }, one, 2.0, norm_rule(*disc, spec, 0.0, one)) -
                 std::sqrt(kPi)) < 1e-12);
  CHECK(std::abs(weighted_lp_norm([](cplx) { return cplx(1.0); }, mod, 2.0, norm_rule(*disc, spec, 0.0, mod)) -
                 std::sqrt(2 * kPi / 3)) < 1e-12);
  CHECK(std::abs(weighted_lp_norm([](cplx z) { return z; }, one, 2.0, norm_rule(*disc, spec, 0.0, one)) -
                 std::sqrt(kPi / 2)) < 1e-12);
}

TEST_CASE("weighted_sobolev_norm examples on the unit disc") {
  QuadratureSpec spec;
  const auto disc = make_unit_disc();
  const auto one = make_constant_weight();
  const auto rule = norm_rule(*disc, spec, 0.0, one);
  const auto c = weighted_sobolev_norm(monomial(0, 0), one, 2.0, 1, rule);
  CHECK(std::abs(c.value - std::sqrt(kPi)) < 1e-12);
  REQUIRE(c.per_order.size() == 2);
  CHECK(c.per_order[1] == 0.0);
  // |∇z|² = 2 under the Frobenius convention.
  const auto z = weighted_sobolev_norm(monomial(1, 0), one, 2.0, 1, rule);
  CHECK(std::abs(z.value - std::sqrt(kPi / 2 + 2 * kPi)) < 1e-12);
  CHECK(std::abs(z.per_order[1] - 2 * kPi) < 1e-12);
}

TEST_CASE("norm invariants on random pairs") {
  QuadratureSpec spec;
  spec.N = 128;
  const auto star = make_smooth_star(0.1, 3);
  const auto mu = make_power_weight(-1.0, 0.0);
  const auto rule = norm_rule(*star, spec, 0.04, mu);
  const auto fam = family_polynomial(3);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> pick(0, fam.size() - 1);
  for (int n = 0; n < 15; ++n) {
    const auto& f = fam[pick(rng)];
    const auto& g = fam[pick(rng)];
    for (double p : {1.5, 2.0, 3.0}) {
      const double nf = weighted_sobolev_norm(f, mu, p, 2, rule).value;
      const double ng = weighted_sobolev_norm(g, mu, p, 2, rule).value;
      const double nfg = weighted_sobolev_norm(f + g, mu, p, 2, rule).value;
      CHECK(nfg <= nf + ng + 1e-12);
      const double scaled = weighted_sobolev_norm(f.scaled(cplx(-2.0, 1.5)), mu, p, 2, rule).value;
      CHECK(std::abs(scaled - 2.5 * nf) < 1e-12 * scaled);
      double prev = 0.0;
      for (int k = 0; k <= 2; ++k) {
        const double v = weighted_sobolev_norm(f, mu, p, k, rule).value;
        CHECK(v >= prev);
        prev = v;
      }
    }
  }
  CHECK(weighted_sobolev_norm(TestFunction(), mu, 2.0, 2, rule).value == 0.0);
}

TEST_CASE("region monotonicity") {
  QuadratureSpec spec;
  const auto disc = make_unit_disc();
  const auto mu = make_power_weight(0.5, cplx(0.2, 0.1));
  for (const auto& f : family_polynomial(2)) {
    const double a = weighted_sobolev_norm(f, mu, 2.0, 1, norm_rule(*disc, spec, 0.04, mu)).value;
    const double b = weighted_sobolev_norm(f, mu, 2.0, 1, norm_rule(*disc, spec, 0.08, mu)).value;
    CHECK(a >= b);
  }
}

TEST_CASE("norms are stable when N doubles") {
  const auto star = make_smooth_star(0.1, 3);
  for (double alpha : {-1.0, 0.0, 1.0}) {
    const auto mu = make_power_weight(alpha, 0.0);
    QuadratureSpec coarse;
    const QuadratureSpec fine = coarse.refined();
    for (const auto& f : family_polynomial(4)) {
      const double a = weighted_sobolev_norm(f, mu, 2.0, 1, norm_rule(*star, coarse, 0.04, mu)).value;
      const double b = weighted_sobolev_norm(f, mu, 2.0, 1, norm_rule(*star, fine, 0.04, mu)).value;
      CHECK(std::abs(a - b) < 5e-3 * b);
    }
  }
}

TEST_CASE("embedding sanity: L^q finiteness below p") {
  QuadratureSpec spec;
  const auto disc = make_unit_disc();
  const auto mu = make_power_weight(-1.5, 0.0);
  const auto rule = norm_rule(*disc, spec, 0.0, mu);
  for (double q : {1.1, 1.5, 2.0}) {
    CHECK(std::isfinite(weighted_lp_norm([](cplx z) { return 1.0 + z; }, make_constant_weight(), q, rule)));
    CHECK(std::isfinite(weighted_lp_norm([](cplx z) { return 1.0 + z; }, mu, q, rule)));
  }
}

TEST_CASE("non-finite contributions name the node") {
  QuadratureSpec spec;
  const auto disc = make_unit_disc();
  const auto one = make_constant_weight();
  const auto rule = norm_rule(*disc, spec, 0.0, one);
  CHECK_THROWS_AS(weighted_lp_norm([](cplx) { return cplx(INFINITY); }, one, 2.0, rule), QuadratureError);
  CHECK_THROWS_AS(weighted_lp_norm([](cplx) { return cplx(1.0); }, one, 1.0, rule), PreconditionError);
  CHECK_THROWS_AS(weighted_sobolev_norm(bump(0.0, 0.5), one, 2.0, 11, rule), PreconditionError);
}
