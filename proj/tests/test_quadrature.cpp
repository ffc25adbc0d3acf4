#include <doctest.h>

#include <cmath>

#include "brinkman/mesh.hpp"
#include "brinkman/quadrature.hpp"
#include "brinkman/spaces.hpp"

using namespace brinkman;

namespace {

double factorial(int k)
{
  return std::tgamma(k + 1.0);
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("monomials up to the rule degree are integrated exactly")
{
  for (int degree = 1; degree <= kMaxQuadratureDegree; ++degree) {
    const auto rule = triangle_rule(degree);
    CHECK(rule.degree == degree);
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; a + b <= degree; ++b) {
        double sum = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q)
          sum += rule.weights[q] * std::pow(rule.points[q].x(), a) * std::pow(rule.points[q].y(), b);
        const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
        CAPTURE(degree);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
      }
  }
}

TEST_CASE("points lie inside the triangle and weights are positive")
{
  for (int degree = 1; degree <= kMaxQuadratureDegree; ++degree) {
    const auto rule = triangle_rule(degree);
    double total = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      CHECK(rule.weights[q] > 0.0);
      CHECK(rule.points[q].x() > 0.0);
      CHECK(rule.points[q].y() > 0.0);
      CHECK(rule.points[q].x() + rule.points[q].y() < 1.0);
      total += rule.weights[q];
    }
    CHECK(total == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("degree one is the centroid rule")
{
  const auto rule = triangle_rule(1);
  REQUIRE(rule.size() == 1);
  CHECK(rule.points[0].x() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(rule.points[0].y() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(rule.weights[0] == doctest::Approx(0.5));
}

TEST_CASE("degree outside the supported range throws")
{
  CHECK_THROWS_AS(triangle_rule(0), std::invalid_argument);
  CHECK_THROWS_AS(triangle_rule(kMaxQuadratureDegree + 1), std::invalid_argument);
}

TEST_CASE("Gauss-Legendre on the unit interval")
{
  for (int m = 1; m <= 8; ++m) {
    std::vector<double> x, w;
    gauss_legendre_unit(m, x, w);
    REQUIRE(x.size() == static_cast<std::size_t>(m));
    for (int k = 0; k < 2 * m; ++k) {
      double sum = 0.0;
      for (int i = 0; i < m; ++i)
        sum += w[static_cast<std::size_t>(i)] * std::pow(x[static_cast<std::size_t>(i)], k);
      CHECK(sum == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
    }
  }
}

TEST_CASE("mapped rules integrate polynomials over the unit square")
{
  // x^3 y^2 + x y over [0,1]^2 = 1/12 + 1/4
  const auto mesh = build_structured_mesh(3);
  const auto rule = triangle_rule(5);
  double sum = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto geo = CellGeometry::of(mesh, c);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point x = geo.map(rule.points[q]);
      sum += rule.weights[q] * std::abs(geo.det) * (std::pow(x.x(), 3) * x.y() * x.y() + x.x() * x.y());
    }
  }
  CHECK(sum == doctest::Approx(1.0 / 12.0 + 0.25).epsilon(1e-14));
}

}
