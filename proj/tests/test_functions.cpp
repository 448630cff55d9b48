#include "doctest.h"

#include <cmath>
#include <random>

#include "planar_sio/functions.hpp"

using namespace psio;

TEST_CASE("monomial derivatives") {
  const auto zzb = monomial(1, 1);
  CHECK(std::abs(zzb.wirtinger(1, 1, cplx(0.3, -0.2)) - 1.0) < 1e-15);
  CHECK(std::abs(zzb.wirtinger(1, 1, cplx(-0.9, 0.4)) - 1.0) < 1e-15);

  const auto zb2 = monomial(0, 2);
  CHECK(std::abs(zb2.wirtinger(0, 1, cplx(1, 1)) - cplx(2, -2)) < 1e-15);

  const auto z3 = monomial(3, 0);
  CHECK(std::abs(z3.wirtinger(0, 1, cplx(0.4, 0.7))) == 0.0);
  CHECK(std::abs(z3.wirtinger(2, 0, cplx(0.5, 0.0)) - 3.0) < 1e-15);
}

TEST_CASE("bump values and support") {
  const auto disc = make_unit_disc();
  const cplx c(0.1, -0.2);
  const double r = 0.4;
  const auto f = bump(*disc, c, r);
  CHECK(std::abs(f(c) - std::exp(-1.0)) < 1e-15);
  CHECK(f(c + 1.01 * r) == cplx(0.0));
  CHECK(std::abs(f.wirtinger(1, 0, c)) < 1e-15);
  CHECK_THROWS_AS(bump(*disc, cplx(0.7, 0.0), 0.4), PreconditionError);
}

TEST_CASE("family_polynomial enumerates all monomials up to the degree") {
  CHECK(family_polynomial(0).size() == 1);
  CHECK(family_polynomial(4).size() == 15);
  CHECK(family_polynomial(5).size() == 21);
  const auto fam = family_polynomial(2);
  CHECK(fam[1].label() == "z");
  CHECK(fam[2].label() == "zb");
  CHECK(fam[4].label() == "z*zb");
}

TEST_CASE("fd_check on polynomial family") {
  for (const auto& f : family_polynomial(4)) {
    const auto rep = fd_check(f, 50, 0.0, 0.9, 3, 3);
    CHECK_MESSAGE(rep.max_error < 1e-9, f.label());
    CHECK(rep.passed);
  }
}

TEST_CASE("fd_check on bump function") {
  const cplx c(0.05, 0.1);
  const double r = 0.6;
  const auto f = bump(c, r);
  const auto rep = fd_check(f, 100, c, 0.95 * r, 5, 3);
  CHECK(rep.max_error < 1e-6);
  CHECK(rep.passed);
}

TEST_CASE("fd_check flags a corrupted first derivative") {
  const auto f = with_corrupted_derivative(monomial(2, 1), 1, 0, 1.01);
  const auto rep = fd_check(f, 20, 0.0, 0.8, 7, 1);
  CHECK_FALSE(rep.passed);
  CHECK(rep.max_error > 1e-3);
  CHECK(rep.worst_a == 1);
  CHECK(rep.worst_b == 0);
}

TEST_CASE("Wirtinger derivatives reproduce real partial derivatives") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  std::vector<TestFunction> fs = family_polynomial(3);
  fs.push_back(bump(cplx(0.1, 0.0), 0.8));
  fs.push_back(simple_pole(2.0));
  const double h = 1e-5;
  for (const auto& f : fs) {
    for (int n = 0; n < 20; ++n) {
      const cplx z(u(rng), u(rng));
      const cplx fx = (f(z + h) - f(z - h)) / (2 * h);
      const cplx fy = (f(z + kI * h) - f(z - kI * h)) / (2 * h);
      const cplx d = f.wirtinger(1, 0, z);
      const cplx db = f.wirtinger(0, 1, z);
      CHECK(std::abs(d + db - fx) < 1e-8);
      CHECK(std::abs(kI * (d - db) - fy) < 1e-8);
    }
  }
}

TEST_CASE("mixed derivative symmetry via finite differences") {
  const auto f = bump(cplx(-0.1, 0.05), 0.7);
  const double h = 1e-4;
  for (cplx z : {cplx(0.0, 0.0), cplx(0.2, 0.3), cplx(-0.4, 0.1)}) {
    // ∂̄ of supplied ∂f and ∂ of supplied ∂̄f.
    auto dbar = [&](int a, int b) {
      const cplx dx = (f.wirtinger(a, b, z + h) - f.wirtinger(a, b, z - h)) / (2 * h);
      const cplx dy = (f.wirtinger(a, b, z + kI * h) - f.wirtinger(a, b, z - kI * h)) / (2 * h);
      return std::pair{0.5 * (dx + kI * dy), 0.5 * (dx - kI * dy)};
    };
    const cplx dbar_of_d = dbar(1, 0).first;
    const cplx d_of_dbar = dbar(0, 1).second;
    CHECK(std::abs(dbar_of_d - d_of_dbar) < 1e-6);
    CHECK(std::abs(dbar_of_d - f.wirtinger(1, 1, z)) < 1e-6);
  }
}

TEST_CASE("derivative views, scaling and sums") {
  const auto f = monomial(3, 2);
  const auto g = f.derivative(1, 1);
  const cplx z(0.3, 0.4);
  CHECK(std::abs(g(z) - f.wirtinger(1, 1, z)) < 1e-15);
  CHECK(std::abs(g.wirtinger(1, 0, z) - f.wirtinger(2, 1, z)) < 1e-15);
  const auto s = f.scaled(cplx(0, 2)) + monomial(1, 0);
  CHECK(std::abs(s(z) - (cplx(0, 2) * f(z) + z)) < 1e-15);
  CHECK(TestFunction().is_zero());
  CHECK(TestFunction()(z) == cplx(0.0));
  const auto b = bump(0.0, 0.5);
  CHECK(b.k_max() == 10);
  CHECK(b.derivative(2, 1).k_max() == 7);
  CHECK_THROWS_AS(b.wirtinger(6, 5, z), PreconditionError);
}

TEST_CASE("real gradient convention") {
  // f = z: |∇f|² = |f_x|² + |f_y|² = 1 + 1 = 2.
  const cplx first[2] = {0.0, 1.0};  // ∂̄f = 0, ∂f = 1
  CHECK(real_derivative_norm_sq(first) == doctest::Approx(2.0));
  // f = x² = (z + zb)²/4 → Hessian diag(2, 0): |∇²f|² = 4.
  // ∂̄² f = 1/2, ∂∂̄ f = 1/2, ∂² f = 1/2.
  const cplx second[3] = {0.5, 0.5, 0.5};
  CHECK(real_derivative_norm_sq(second) == doctest::Approx(4.0));
}
