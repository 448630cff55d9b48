#include "doctest.h"

#include <cmath>
#include <random>

#include "planar_sio/transforms.hpp"

using namespace psio;

namespace {

std::vector<cplx> interior_targets(const PlanarDomain& d, int n, double standoff, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Box b = d.bounding_box();
  std::uniform_real_distribution<double> ux(b.xmin, b.xmax);
  std::uniform_real_distribution<double> uy(b.ymin, b.ymax);
  std::vector<cplx> out;
  while (static_cast<int>(out.size()) < n) {
    const cplx z(ux(rng), uy(rng));
    if (d.contains(z) && d.distance_to_boundary(z) >= standoff) out.push_back(z);
  }
  return out;
}

// Central differences of a field in z, returning (∂, ∂̄).
template <class F>
std::pair<cplx, cplx> wirtinger_fd(const F& field, cplx z, double h) {
  const cplx dx = (field(z + h) - field(z - h)) / (2 * h);
  const cplx dy = (field(z + kI * h) - field(z - kI * h)) / (2 * h);
  return {0.5 * (dx - kI * dy), 0.5 * (dx + kI * dy)};
}

}  // namespace

TEST_CASE("convention test: dbar T f = f and d T f = H f") {
  // Run first: a sign or normalisation drift in any kernel breaks this loudly.
  QuadratureSpec spec;
  const auto star = make_smooth_star(0.1, 3);
  const TransformContext ctx(star, spec);
  const auto f = monomial(2, 1) + monomial(0, 1).scaled(cplx(0.3, -0.7));
  for (cplx z : {cplx(0.2, 0.1), cplx(-0.3, 0.35)}) {
    const auto [d, db] = wirtinger_fd([&](cplx w) { return ctx.T(f, w); }, z, 1e-4);
    CHECK(std::abs(db - f(z)) < 1e-6);
    CHECK(std::abs(d - ctx.H(f, z)) < 1e-6);
  }
}

TEST_CASE("compute_T examples on the unit disc") {
  const auto disc = make_unit_disc();
  const cplx z(0.3, 0.4);
  CHECK(std::abs(compute_T(monomial(0, 0), disc, z) - std::conj(z)) < 1e-10);
  CHECK(std::abs(compute_T(monomial(1, 0), disc, 0.5) - (-0.75)) < 1e-10);
  CHECK(compute_T(TestFunction(), disc, z) == cplx(0.0));
}

TEST_CASE("compute_H examples on the unit disc") {
  const auto disc = make_unit_disc();
  for (cplx z : {cplx(0.0), cplx(0.3, 0.4), cplx(-0.6, 0.2)}) {
    CHECK(std::abs(compute_H(monomial(0, 0), disc, z)) < 1e-10);
    CHECK(std::abs(compute_H(monomial(0, 1), disc, z)) < 1e-8);
    CHECK(compute_H(TestFunction(), disc, z) == cplx(0.0));
  }
}

TEST_CASE("compute_S, compute_Stilde and compute_L examples on the unit disc") {
  const auto disc = make_unit_disc();
  const auto z2 = BoundaryTrace::of(monomial(2, 0));
  const auto zb = BoundaryTrace::of(monomial(0, 1));
  const auto one = BoundaryTrace::of(monomial(0, 0));
  CHECK(std::abs(compute_S(z2, disc, 0.5) - 0.25) < 1e-12);
  CHECK(std::abs(compute_S(zb, disc, cplx(0.2, -0.5))) < 1e-12);
  CHECK(std::abs(compute_S(one, disc, cplx(0.1, 0.3)) - 1.0) < 1e-12);
  CHECK(std::abs(compute_Stilde(z2, disc, 0.5) - 1.0) < 1e-12);
  CHECK(std::abs(compute_Stilde(zb, disc, cplx(-0.4, 0.1))) < 1e-12);
  CHECK(std::abs(compute_Stilde(one, disc, 0.3)) < 1e-12);
  CHECK(std::abs(compute_L(one, disc, cplx(0.3, 0.2))) < 1e-12);
  CHECK(std::abs(compute_L(BoundaryTrace::of(simple_pole(2.0)), disc, 0.5) - 1.0 / 6.0) < 1e-10);
  CHECK(compute_L(BoundaryTrace::of(TestFunction()), disc, 0.5) == cplx(0.0));
}

TEST_CASE("t_of_one and h_of_one on the unit disc") {
  const auto disc = make_unit_disc();
  CHECK(std::abs(t_of_one(disc, 0.3) - 0.3) < 1e-12);
  for (cplx z : {cplx(0.0), cplx(0.5, -0.5), cplx(-0.1, 0.7)}) {
    CHECK(std::abs(t_of_one(disc, z) - std::conj(z)) < 1e-12);
    CHECK(std::abs(h_of_one(disc, z)) < 1e-10);
  }
  CHECK_THROWS_AS(t_of_one(disc, 0.995), PreconditionError);
}

TEST_CASE("build_tilde_f examples") {
  const auto disc = make_unit_disc();
  const auto rule = boundary_rule(disc->boundary(), 64, 2);
  const auto t2 = build_tilde_f(monomial(2, 0)).sample(rule);
  const auto tb = build_tilde_f(monomial(0, 1)).sample(rule);
  const auto tc = build_tilde_f(monomial(0, 0).scaled(3.0)).sample(rule);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const cplx zeta = rule.points()[i];
    CHECK(std::abs(t2[i] - 2.0 * zeta) < 1e-14);
    CHECK(std::abs(tb[i] + 1.0 / (zeta * zeta)) < 1e-14);
    CHECK(std::abs(tc[i]) < 1e-14);
  }
  CHECK_THROWS_AS(build_tilde_f(bump(0.0, 0.5).derivative(5, 5)), PreconditionError);
}

TEST_CASE("tangential map matches differentiation along the curve") {
  // τ g = conj(ζ') dg/ds, checked against finite differences in s on the star.
  const auto star = make_smooth_star(0.1, 3);
  const auto& curve = star->boundary();
  const auto f = monomial(2, 1) + simple_pole(cplx(2.0, 1.0));
  const auto g = BoundaryTrace::of(f).times_conj_tangent_power(2);
  const auto tg = g.tangential();
  const auto ttg = tg.tangential();
  auto eval = [&](const BoundaryTrace& tr, double s) {
    BoundaryQuadrature one;
    one.s = {s};
    one.weights = {1.0};
    one.length = curve.length();
    one.derivs.resize(6);
    for (int j = 0; j < 6; ++j) one.derivs[j] = {curve.derivative(s, j)};
    return tr.value_at(one, 0);
  };
  const double h = 1e-5;
  for (double s : {0.1, 1.7, 4.2}) {
    const cplx fd1 = std::conj(curve.derivative(s, 1)) * (eval(g, s + h) - eval(g, s - h)) / (2 * h);
    CHECK(std::abs(fd1 - eval(tg, s)) < 1e-7);
    const cplx fd2 = std::conj(curve.derivative(s, 1)) * (eval(tg, s + h) - eval(tg, s - h)) / (2 * h);
    CHECK(std::abs(fd2 - eval(ttg, s)) < 1e-6);
  }
}

TEST_CASE("derivative_S examples") {
  QuadratureSpec spec;
  const auto disc = make_unit_disc();
  const TransformContext ctx(disc, spec);
  CHECK(std::abs(ctx.derivative_S(BoundaryTrace::of(monomial(3, 0)), 0.5, 2) - 3.0) < 1e-11);
  for (cplx z : {cplx(0.1, 0.2), cplx(-0.5, 0.3)}) {
    CHECK(std::abs(ctx.derivative_S(BoundaryTrace::of(monomial(0, 2)), z, 2)) < 1e-11);
    CHECK(std::abs(ctx.derivative_S(BoundaryTrace::of(monomial(0, 2)), z, 3)) < 1e-10);
  }
  CHECK_THROWS_AS(ctx.derivative_S(BoundaryTrace::of(bump(0.0, 0.5).derivative(5, 5)), 0.2, 2),
                  PreconditionError);
}

TEST_CASE("derivative_S order 2 matches finite differences of S~") {
  QuadratureSpec spec;
  for (const auto& dom : {make_unit_disc(), make_smooth_star(0.1, 3)}) {
    const TransformContext ctx(dom, spec);
    const auto fam = family_polynomial(3);
    for (const auto& f : fam) {
      const auto g = BoundaryTrace::of(f);
      for (cplx z : {cplx(0.2, -0.1), cplx(-0.3, 0.4)}) {
        const auto [d, db] = wirtinger_fd([&](cplx w) { return ctx.Stilde(g, w); }, z, 1e-4);
        const cplx exact = ctx.derivative_S(g, z, 2);
        CHECK_MESSAGE(std::abs(d - exact) <= 1e-4 * std::max(1.0, std::abs(exact)), f.label());
        CHECK(std::abs(db) < 1e-6);
      }
    }
  }
}

TEST_CASE("derivative_T and derivative_H examples") {
  QuadratureSpec spec;
  const auto disc = make_unit_disc();
  const TransformContext ctx(disc, spec);
  const auto one = monomial(0, 0);
  for (cplx z : {cplx(0.2, 0.3), cplx(-0.6, 0.1)}) {
    CHECK(std::abs(ctx.derivative_T(one, z, 0, 1) - 1.0) < 1e-14);
    CHECK(std::abs(ctx.derivative_T(one, z, 1, 0)) < 1e-10);
    CHECK(std::abs(ctx.derivative_H(one, z, 1, 0)) < 1e-10);
  }
  CHECK_THROWS_AS(ctx.derivative_H(bump(0.0, 0.5).derivative(4, 5), 0.1, 2, 0), PreconditionError);
}

TEST_CASE("derivative recursions match finite differences on the star") {
  QuadratureSpec spec;
  const auto star = make_smooth_star(0.1, 3);
  const TransformContext ctx(star, spec);
  const auto f = monomial(2, 2) + monomial(1, 0).scaled(cplx(0, 1));
  const cplx z(0.15, -0.25);
  const double h = 1e-3;
  for (int a : {1, 2}) {
    const auto [d, db] = wirtinger_fd([&](cplx w) { return ctx.derivative_H(f, w, a - 1, 0); }, z, h);
    CHECK(std::abs(d - ctx.derivative_H(f, z, a, 0)) < 1e-5);
    CHECK(std::abs(db - ctx.derivative_H(f, z, a - 1, 1)) < 1e-5);
  }
  const auto [dT, dbT] = wirtinger_fd([&](cplx w) { return ctx.derivative_T(f, w, 1, 0); }, z, h);
  CHECK(std::abs(dT - ctx.derivative_T(f, z, 2, 0)) < 1e-5);
  CHECK(std::abs(dbT - ctx.derivative_T(f, z, 1, 1)) < 1e-5);
}

TEST_CASE("identities on disc and star") {
  QuadratureSpec spec;
  for (const auto& dom : {make_unit_disc(), make_smooth_star(0.1, 3)}) {
    const TransformContext ctx(dom, spec);
    const auto targets = interior_targets(*dom, 4, 0.1, 3);
    for (const auto& f : family_polynomial(3)) {
      const auto g = BoundaryTrace::of(f);
      for (cplx z : targets) {
        const auto kit = ctx.kit(z);
        const auto s = kit.solid(f);
        const cplx cg = ctx.S(g, z) - f(z) + kit.solid(f.derivative(0, 1)).T;
        const cplx ps = ctx.Stilde(g, z) + kit.solid(f.derivative(0, 1)).H - f.wirtinger(1, 0, z);
        const cplx rec = s.H - kit.solid(f.derivative(1, 0)).T + ctx.L(g, z);
        const cplx ls = ctx.L(g, z) - ctx.S(g.times_conj_tangent_power(2), z);
        CHECK_MESSAGE(std::abs(cg) < 1e-5, f.label());
        CHECK_MESSAGE(std::abs(ps) < 1e-4, f.label());
        CHECK_MESSAGE(std::abs(rec) < 1e-5, f.label());
        CHECK_MESSAGE(std::abs(ls) < 1e-8, f.label());
      }
    }
  }
}

TEST_CASE("boundary transforms are holomorphic") {
  QuadratureSpec spec;
  const auto star = make_smooth_star(0.1, 3);
  const TransformContext ctx(star, spec);
  const auto g = BoundaryTrace::of(monomial(1, 2));
  for (cplx z : {cplx(0.1, 0.1), cplx(-0.4, -0.2)}) {
    CHECK(std::abs(wirtinger_fd([&](cplx w) { return ctx.S(g, w); }, z, 1e-4).second) < 1e-6);
    CHECK(std::abs(wirtinger_fd([&](cplx w) { return ctx.Stilde(g, w); }, z, 1e-4).second) < 1e-6);
    CHECK(std::abs(wirtinger_fd([&](cplx w) { return ctx.L(g, w); }, z, 1e-4).second) < 1e-6);
  }
}

TEST_CASE("square: first-order traces work, curvature traces collide with corners") {
  QuadratureSpec spec;
  const auto sq = make_unit_square();
  const TransformContext ctx(sq, spec);
  const cplx z(0.4, 0.3);
  CHECK(std::abs(ctx.S(BoundaryTrace::of(monomial(2, 0)), z) - z * z) < 1e-10);
  CHECK(std::abs(ctx.t_of_one(z) - compute_T(monomial(0, 0), sq, z)) < 1e-12);
  CHECK(std::isfinite(std::abs(ctx.derivative_H(monomial(0, 0), z, 1, 0))));
  CHECK_THROWS_AS(ctx.derivative_S(BoundaryTrace::of(monomial(1, 1)), z, 3), GeometryError);
}

TEST_CASE("batch evaluation with identity residuals") {
  const auto disc = make_unit_disc();
  TransformRequest req;
  req.f = monomial(2, 1);
  req.targets = {cplx(0.1, 0.2), cplx(-0.3, 0.1), cplx(0.5, -0.4)};
  req.check_identity = true;
  for (Operator op : {Operator::T, Operator::H, Operator::S, Operator::Stilde, Operator::L}) {
    req.op = op;
    const auto field = evaluate(req, disc);
    REQUIRE(field.values.size() == 3);
    CHECK(field.identity_checked);
    CHECK_MESSAGE(field.identity_residual < 1e-5, to_string(op));
    const TransformContext ctx(disc, req.spec);
    const cplx z = req.targets[1];
    const auto g = BoundaryTrace::of(req.f);
    const cplx expect = op == Operator::T ? ctx.T(req.f, z)
                        : op == Operator::H ? ctx.H(req.f, z)
                        : op == Operator::S ? ctx.S(g, z)
                        : op == Operator::Stilde ? ctx.Stilde(g, z)
                                                 : ctx.L(g, z);
    CHECK(std::abs(field.values[1] - expect) < 1e-14);
    CHECK(operator_from_string(to_string(op)) == op);
  }
  req.targets.push_back(0.999);
  CHECK_THROWS_AS(evaluate(req, disc), PreconditionError);
  CHECK_THROWS_AS(operator_from_string("B"), PreconditionError);
}
