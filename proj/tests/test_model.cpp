#include <doctest.h>

#include <cmath>
#include <random>

#include "brinkman/model.hpp"
#include "oracle.hpp"

using namespace brinkman;
using oracle::central_difference;

namespace {

std::vector<Point> interior_points(int count, std::uint64_t seed, double margin = 0.02)
{
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(margin, 1.0 - margin);
  std::vector<Point> pts;
  for (int i = 0; i < count; ++i)
    pts.emplace_back(u(gen), u(gen));
  return pts;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("phi derivatives against finite differences")
{
  const auto ex = ExactSolution::manufactured();
  const double h = 1e-4;
  for (const auto& x : interior_points(20, 1)) {
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= 2; ++b) {
        const auto f = [&](const Point& y) { return ex.phi_derivative(y, a, b); };
        const double scale = 1.0 + std::abs(ex.phi_derivative(x, a + 1, b)) + std::abs(ex.phi_derivative(x, a, b + 1));
        CHECK(std::abs(central_difference(f, x, 0, h) - ex.phi_derivative(x, a + 1, b)) < 1e-7 * scale);
        CHECK(std::abs(central_difference(f, x, 1, h) - ex.phi_derivative(x, a, b + 1)) < 1e-7 * scale);
      }
    CHECK(ex.phi(x) == doctest::Approx(1000 * x.x() * x.x() * std::pow(1 - x.x(), 4) * std::pow(x.y(), 3)
                                       * std::pow(1 - x.y(), 2)));
  }
}

TEST_CASE("exact fields are consistent with each other")
{
  const auto ex = ExactSolution::manufactured();
  const double h = 1e-4;
  auto phi = [&](const Point& y) { return ex.phi(y); };
  for (const auto& x : interior_points(25, 2)) {
    const auto u = ex.u(x);
    CHECK(u.x() == doctest::Approx(central_difference(phi, x, 1, h)).epsilon(1e-7).scale(1.0));
    CHECK(u.y() == doctest::Approx(-central_difference(phi, x, 0, h)).epsilon(1e-7).scale(1.0));
    const auto gu = ex.grad_u(x);
    CHECK(std::abs(gu.trace()) < 1e-10 * (1.0 + gu.norm()));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        auto ui = [&](const Point& y) { return ex.u(y)(i); };
        CHECK(gu(i, j) == doctest::Approx(central_difference(ui, x, j, h)).epsilon(1e-7).scale(1.0));
      }
    CHECK(ex.omega(x) == doctest::Approx(gu(1, 0) - gu(0, 1)).epsilon(1e-12).scale(1.0));
    auto om = [&](const Point& y) { return ex.omega(y); };
    auto pr = [&](const Point& y) { return ex.pressure(y); };
    for (int d = 0; d < 2; ++d) {
      CHECK(ex.grad_omega(x)(d) == doctest::Approx(central_difference(om, x, d, h)).epsilon(1e-7).scale(1.0));
      CHECK(ex.grad_pressure(x)(d) == doctest::Approx(central_difference(pr, x, d, h)).epsilon(1e-7).scale(1.0));
    }
  }
}

TEST_CASE("velocity vanishes on the boundary")
{
  const auto ex = ExactSolution::manufactured();
  for (double t : {0.0, 0.3, 0.71, 1.0})
    for (const Point& x : {Point(t, 0.0), Point(t, 1.0), Point(0.0, t), Point(1.0, t)})
      CHECK(ex.u(x).norm() < 1e-13);
}

TEST_CASE("exact pressure has mean -1/4")
{
  CHECK(exact_pressure_mean(ExactSolution::manufactured()) == doctest::Approx(-0.25).epsilon(1e-10));
  CHECK(exact_pressure_mean(ExactSolution::zero()) == 0.0);
}

TEST_CASE("viscosity a")
{
  const double nu0 = 1e-4, nu1 = 1.0;
  const auto peak = viscosity_a(2.0 / 3.0, 2.0 / 3.0, nu0, nu1);
  CHECK(peak.value == doctest::Approx(nu0 + (nu1 - nu0) * 721.0 / 729.0).epsilon(1e-14));
  CHECK(peak.gradient.norm() < 1e-12);
  CHECK(viscosity_a(0.0, 0.4, nu0, nu1).value == nu0);
  CHECK(viscosity_a(0.4, 1.0, nu0, nu1).value == nu0);
  const Point x(0.3, 0.55);
  auto f = [&](const Point& y) { return viscosity_a(y.x(), y.y(), nu0, nu1).value; };
  const auto vg = viscosity_a(x.x(), x.y(), nu0, nu1);
  CHECK(vg.gradient.x() == doctest::Approx(central_difference(f, x, 0, 1e-4)).epsilon(1e-8));
  CHECK(vg.gradient.y() == doctest::Approx(central_difference(f, x, 1, 1e-4)).epsilon(1e-8));
}

TEST_CASE("viscosity b")
{
  const double nu0 = 1e-4, nu1 = 1.0;
  const auto centre = viscosity_b(0.5, 0.5, nu0, nu1);
  CHECK(centre.value == nu1);
  CHECK(centre.gradient.norm() == 0.0);
  const auto corner = viscosity_b(0.0, 0.0, nu0, nu1);
  CHECK(corner.value == nu0);
  CHECK(corner.gradient.norm() == 0.0);
  // inside the transition layer
  const Point x(0.5 + 0.045, 0.5 - 0.03);
  auto f = [&](const Point& y) { return viscosity_b(y.x(), y.y(), nu0, nu1).value; };
  const auto vg = viscosity_b(x.x(), x.y(), nu0, nu1);
  CHECK(vg.value > nu0);
  CHECK(vg.value < nu1);
  CHECK(vg.gradient.x() == doctest::Approx(central_difference(f, x, 0, 1e-6)).epsilon(1e-6));
  CHECK(vg.gradient.y() == doctest::Approx(central_difference(f, x, 1, 1e-6)).epsilon(1e-6));
}

TEST_CASE("viscosities respect their bounds")
{
  const auto mesh = build_structured_mesh(16);
  const auto rule = triangle_rule(6);
  for (const auto& nu : {Viscosity::smooth_a(1e-4, 1.0), Viscosity::steep_b(1e-4, 1.0), Viscosity::constant(2.0)}) {
    auto c = ProblemCoefficients::with_defaults(nu, 1e-6);
    CHECK_NOTHROW(c.validate());
    CHECK_NOTHROW(c.validate_on(mesh, rule));
    for (const auto& x : interior_points(200, 3, 0.0)) {
      const double v = nu(x).value;
      CHECK(v >= nu.nu0());
      CHECK(v <= nu.nu1());
    }
  }
}

TEST_CASE("coefficient defaults and validation")
{
  auto c = ProblemCoefficients::with_defaults(Viscosity::smooth_a(1e-4, 1.0), 1e-6);
  CHECK(c.kappa1 == 1.0);
  CHECK(c.kappa2 == 0.5e-4);
  CHECK(c.kinv == doctest::Approx(1e6));
  CHECK(c.sigma_min() == c.sigma_max());
  auto bad = c;
  bad.kappa1 = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.kappa1 = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.kappa2 = 0.25e-4;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.kinv = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.nu = Viscosity::smooth_a(2.0, 1.0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = c;
  bad.nu = Viscosity::constant(-1.0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("forcing matches the finite-difference momentum residual")
{
  const auto ex = ExactSolution::manufactured();
  for (const auto& nu : {Viscosity::smooth_a(1e-4, 1.0), Viscosity::steep_b(1e-4, 1.0), Viscosity::constant(0.3)})
    for (double kperm : {1e-6, 1.0}) {
      const auto c = ProblemCoefficients::with_defaults(nu, kperm);
      const Forcing f(c, ex);
      for (const auto& x : interior_points(40, 5)) {
        const Eigen::Vector2d fd = oracle::fd_forcing(c, ex, x);
        CAPTURE(nu.name());
        CAPTURE(kperm);
        CHECK((f(x) - fd).norm() <= 1e-6 * std::max(1.0, fd.norm()));
      }
    }
}

TEST_CASE("zero solution and zero forcing")
{
  const auto z = ExactSolution::zero();
  const Point x(0.3, 0.4);
  CHECK(z.u(x).norm() == 0.0);
  CHECK(z.omega(x) == 0.0);
  CHECK(z.pressure(x) == 0.0);
  CHECK(Forcing::zero()(x).norm() == 0.0);
}

TEST_CASE("ellipticity diagnostic")
{
  const auto mesh = build_structured_mesh(8);
  CHECK(ellipticity_diagnostic(ProblemCoefficients::with_defaults(Viscosity::constant(1.0), 1.0), mesh) == 0.0);
  // 4 |grad nu|^2 / (sigma_min nu0^2) for nu_a, K = I and nu0 = 1, nu1 = 1.01
  const auto c = ProblemCoefficients::with_defaults(Viscosity::smooth_a(1.0, 1.01), 1.0);
  const double d = ellipticity_diagnostic(c, mesh);
  CHECK(d > 0.0);
  CHECK(d < 0.25);
  const auto stiff = ProblemCoefficients::with_defaults(Viscosity::smooth_a(1e-4, 1.0), 1e-6);
  CHECK(ellipticity_diagnostic(stiff, mesh) > 0.25);
}

}
