#include "doctest.h"

#include <cmath>
#include <random>

#include "planar_sio/geometry.hpp"

using namespace psio;

namespace {

// Polygonal length of r(θ) = 1 + a cos(mθ), computed straight from the polar form.
double polygonal_star_length(double a, int m, int segments) {
  auto pt = [&](double t) { return (1.0 + a * std::cos(m * t)) * std::polar(1.0, t); };
  double total = 0.0;
  cplx prev = pt(0.0);
  for (int j = 1; j <= segments; ++j) {
    const cplx cur = pt(2.0 * kPi * j / segments);
    total += std::abs(cur - prev);
    prev = cur;
  }
  return total;
}

cplx fd_derivative(const BoundaryCurve& c, double s, int order, double h) {
  auto f = [&](double t) { return c.derivative(t, order); };
  return (-f(s + 2 * h) + 8.0 * f(s + h) - 8.0 * f(s - h) + f(s - 2 * h)) / (12.0 * h);
}

}  // namespace

TEST_CASE("unit disc parameterization and membership") {
  const auto disc = make_unit_disc();
  const auto& c = disc->boundary();
  CHECK(std::abs(c.point(0.0) - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(c.derivative(kPi / 2, 1) - cplx(-1.0, 0.0)) < 1e-15);
  CHECK(c.corners().empty());
  CHECK(c.length() == doctest::Approx(2 * kPi));
  CHECK(disc->contains(0.0));
  CHECK_FALSE(disc->contains(2.0));
  CHECK_FALSE(disc->contains(c.point(0.7)));
}

TEST_CASE("unit square edges, corners and regularity errors") {
  const auto sq = make_unit_square();
  const auto& c = sq->boundary();
  CHECK(std::abs(c.point(0.5) - cplx(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(c.derivative(0.5, 1) - cplx(1.0, 0.0)) < 1e-15);
  CHECK(c.length() == 4.0);
  const auto corners = c.corners();
  REQUIRE(corners.size() == 4);
  for (int j = 0; j < 4; ++j) CHECK(corners[j] == doctest::Approx(j));
  CHECK_THROWS_AS(c.derivative(1.0, 1), GeometryError);
  CHECK_THROWS_AS(c.derivative(0.0, 1), GeometryError);
  CHECK_THROWS_AS(c.derivative(0.5, 2), GeometryError);
  CHECK(std::abs(c.point(2.5) - cplx(0.5, 1.0)) < 1e-15);
  CHECK(std::abs(c.derivative(3.5, 1) - cplx(0.0, -1.0)) < 1e-15);
  CHECK_FALSE(sq->contains(cplx(0.5, 0.0)));
  CHECK(sq->contains(cplx(0.5, 0.5)));
}

TEST_CASE("star arclength against an independent polygonal length") {
  const auto star = make_smooth_star(0.1, 3);
  const double oracle = polygonal_star_length(0.1, 3, 1000000);
  CHECK(star->boundary().length() > 2 * kPi);
  // Polygon error is O(1/n^2) ≈ 1e-11 relative at 10^6 segments.
  CHECK(std::abs(star->boundary().length() - oracle) < 1e-9);
  CHECK(star->contains(0.0));
}

TEST_CASE("degenerate star coincides with the unit disc") {
  const auto star = make_smooth_star(0.0, 3);
  CHECK(std::abs(star->boundary().length() - 2 * kPi) < 1e-10);
  for (int j = 0; j < 50; ++j) {
    const double s = 0.1234 * j;
    CHECK(std::abs(star->boundary().point(s) - std::polar(1.0, s)) < 1e-10);
  }
}

TEST_CASE("star precondition") {
  CHECK_THROWS_AS(make_smooth_star(0.2, 3), PreconditionError);
  CHECK_THROWS_AS(make_smooth_star(-0.01, 3), PreconditionError);
  CHECK_THROWS_AS(make_smooth_star(0.05, 0), PreconditionError);
  CHECK_NOTHROW(make_smooth_star(0.1, 3));
}

TEST_CASE("curve invariants: periodicity, unit speed, reciprocal tangent") {
  for (const auto& dom : {make_unit_disc(), make_smooth_star(0.1, 3), make_smooth_star(0.05, 4)}) {
    const auto& c = dom->boundary();
    const double L = c.length();
    CHECK(std::abs(c.point(0.0) - c.point(L)) < 1e-12);
    for (int order = 1; order <= 3; ++order) {
      CHECK(std::abs(c.derivative(0.3, order) - c.derivative(0.3 + L, order)) < 1e-10);
    }
    for (int j = 0; j < 1000; ++j) {
      const double s = L * (j + 0.37) / 1000.0;
      const cplx t = c.tangent(s);
      CHECK(std::abs(std::abs(t) - 1.0) < 1e-10);
      CHECK(std::abs(std::conj(t) * t - 1.0) < 1e-12);
      CHECK(std::abs(std::conj(t) - 1.0 / t) < 1e-12);
    }
  }
}

TEST_CASE("star higher derivatives match finite differences of lower ones") {
  const auto star = make_smooth_star(0.1, 3);
  const auto& c = star->boundary();
  for (double s : {0.0, 0.4, 1.3, 2.9, 5.0}) {
    for (int order = 1; order <= 4; ++order) {
      const cplx fd = fd_derivative(c, s, order - 1, 1e-3);
      const cplx exact = c.derivative(s, order);
      CHECK(std::abs(fd - exact) < 1e-8 * std::max(1.0, std::abs(exact)) * std::pow(10.0, order - 1));
    }
    // Arclength identities: Re(conj ζ' ζ'') = 0.
    CHECK(std::abs(std::real(std::conj(c.derivative(s, 1)) * c.derivative(s, 2))) < 1e-12);
  }
}

TEST_CASE("winding number and membership agree") {
  std::mt19937_64 rng(11);
  for (const auto& dom : {make_unit_disc(), make_smooth_star(0.1, 3), make_unit_square()}) {
    const Box b = dom->bounding_box();
    std::uniform_real_distribution<double> ux(b.xmin - 0.2, b.xmax + 0.2);
    std::uniform_real_distribution<double> uy(b.ymin - 0.2, b.ymax + 0.2);
    int mismatches = 0;
    for (int j = 0; j < 10000; ++j) {
      const cplx z(ux(rng), uy(rng));
      if (std::abs(dom->distance_to_boundary(z)) < 1e-3) continue;
      const bool inside = dom->contains(z);
      const int w = winding_number(dom->boundary(), z, 512);
      if ((w == 1) != inside) ++mismatches;
      if (!inside && w != 0) ++mismatches;
    }
    CHECK(mismatches == 0);
    CHECK(winding_number(dom->boundary(), dom->contains(0.0) ? cplx(0.0) : cplx(0.5, 0.5)) == 1);
  }
}

TEST_CASE("ray exits land on the boundary of the shrunken region") {
  for (const auto& dom : {make_unit_disc(), make_smooth_star(0.1, 3), make_unit_square()}) {
    const cplx origin = dom->contains(0.0) ? cplx(0.1, -0.05) : cplx(0.4, 0.55);
    for (double delta : {0.0, 0.05}) {
      for (int j = 0; j < 64; ++j) {
        const double theta = 2 * kPi * j / 64 + 0.01;
        const double t = dom->ray_exit(origin, theta, delta);
        const cplx hit = origin + t * std::polar(1.0, theta);
        CHECK(std::abs(dom->distance_to_boundary(hit) - delta) < 1e-10);
      }
    }
  }
}

TEST_CASE("star distance to boundary matches dense sampling") {
  const auto star = make_smooth_star(0.1, 3);
  const auto& c = star->boundary();
  for (cplx z : {cplx(0.2, 0.3), cplx(-0.7, 0.1), cplx(0.0, 0.0), cplx(0.85, -0.2)}) {
    double best = 1e300;
    for (int j = 0; j < 200000; ++j) best = std::min(best, std::abs(c.point(c.length() * j / 200000.0) - z));
    CHECK(std::abs(star->distance_to_boundary(z) - best) < 1e-8);
  }
}
