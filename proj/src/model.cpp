#include "brinkman/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "brinkman/spaces.hpp"

namespace brinkman {

namespace {

// Dense 1D polynomial sum c[k] x^k with exact derivatives.
template <std::size_t N>
struct Poly {
  std::array<double, N> c{};

  double eval(double x, int order = 0) const
  {
    double result = 0.0;
    for (std::size_t k = N; k-- > static_cast<std::size_t>(order);) {
      double factor = 1.0;
      for (int j = 0; j < order; ++j)
        factor *= static_cast<double>(k - static_cast<std::size_t>(j));
      result = result * x + factor * c[k];
    }
    return result;
  }
};

template <std::size_t A, std::size_t B>
Poly<A + B - 1> multiply(const Poly<A>& p, const Poly<B>& q)
{
  Poly<A + B - 1> r;
  for (std::size_t i = 0; i < A; ++i)
    for (std::size_t j = 0; j < B; ++j)
      r.c[i + j] += p.c[i] * q.c[j];
  return r;
}

template <std::size_t E>
Poly<E + 1> one_minus_x_pow()
{
  Poly<E + 1> r;
  r.c[0] = 1.0;
  for (std::size_t e = 0; e < E; ++e) {
    // r *= (1 - x)
    for (std::size_t k = e + 1; k > 0; --k)
      r.c[k] -= r.c[k - 1];
  }
  return r;
}

// X(x) = x^2 (1-x)^4, Y(y) = y^3 (1-y)^2.
const auto kPhiX = multiply(Poly<3>{{0.0, 0.0, 1.0}}, one_minus_x_pow<4>());
const auto kPhiY = multiply(Poly<4>{{0.0, 0.0, 0.0, 1.0}}, one_minus_x_pow<2>());

constexpr double kPi = std::numbers::pi;

}  // namespace

ValueGradient viscosity_a(double x, double y, double nu0, double nu1)
{
  const double scale = (nu1 - nu0) * 721.0 / 16.0;
  const double gx = x * x * (1.0 - x), gy = y * y * (1.0 - y);
  const double dgx = 2.0 * x - 3.0 * x * x, dgy = 2.0 * y - 3.0 * y * y;
  return {nu0 + scale * gx * gy, Eigen::Vector2d(scale * dgx * gy, scale * gx * dgy)};
}

ValueGradient viscosity_b(double x, double y, double nu0, double nu1)
{
  const double dx = x - 0.5, dy = y - 0.5;
  const double dx9 = std::pow(dx, 9), dy9 = std::pow(dy, 9);
  const double exponent = -1e13 * (dx9 * dx + dy9 * dy);
  if (exponent < -700.0)
    return {nu0, Eigen::Vector2d::Zero()};
  const double e = (nu1 - nu0) * std::exp(exponent);
  return {nu0 + e, Eigen::Vector2d(-1e14 * dx9 * e, -1e14 * dy9 * e)};
}

std::string Viscosity::name() const
{
  switch (kind_) {
  case ViscosityKind::Constant: return "constant(" + std::to_string(nu0_) + ")";
  case ViscosityKind::SmoothA: return "a";
  case ViscosityKind::SteepB: return "b";
  }
  return {};
}

ValueGradient Viscosity::operator()(const Point& p) const
{
  switch (kind_) {
  case ViscosityKind::SmoothA: return viscosity_a(p.x(), p.y(), nu0_, nu1_);
  case ViscosityKind::SteepB: return viscosity_b(p.x(), p.y(), nu0_, nu1_);
  case ViscosityKind::Constant: break;
  }
  return {nu0_, Eigen::Vector2d::Zero()};
}

ProblemCoefficients ProblemCoefficients::with_defaults(const Viscosity& nu, double k_perm)
{
  if (!(k_perm > 0.0))
    throw std::invalid_argument("permeability must be positive");
  return {nu, 1.0 / k_perm, 1.0, nu.nu0() / 2.0};
}

void ProblemCoefficients::validate() const
{
  if (!(nu0() > 0.0) || !(nu0() <= nu1()))
    throw std::invalid_argument("viscosity bounds must satisfy 0 < nu0 <= nu1");
  if (!(kinv > 0.0))
    throw std::invalid_argument("inverse permeability must be positive");
  if (!(kappa1 > 0.5 && kappa1 < 1.5))
    throw std::invalid_argument("kappa1 must lie in (1/2, 3/2), got " + std::to_string(kappa1));
  if (!(kappa2 > nu0() / 4.0))
    throw std::invalid_argument("kappa2 must exceed nu0/4, got " + std::to_string(kappa2));
}

void ProblemCoefficients::validate_on(const Mesh& mesh, const QuadratureRule& rule) const
{
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto geo = CellGeometry::of(mesh, c);
    for (const auto& xi : rule.points) {
      const double value = nu(geo.map(xi)).value;
      if (!(value >= nu0() && value <= nu1()))
        throw std::invalid_argument("viscosity " + std::to_string(value) + " outside [nu0, nu1]");
    }
  }
}

double ExactSolution::phi(const Point& p) const
{
  return phi_derivative(p, 0, 0);
}

double ExactSolution::phi_derivative(const Point& p, int a, int b) const
{
  if (zero_)
    return 0.0;
  return 1000.0 * kPhiX.eval(p.x(), a) * kPhiY.eval(p.y(), b);
}

Eigen::Vector2d ExactSolution::u(const Point& p) const
{
  return {phi_derivative(p, 0, 1), -phi_derivative(p, 1, 0)};
}

Eigen::Matrix2d ExactSolution::grad_u(const Point& p) const
{
  const double pxy = phi_derivative(p, 1, 1);
  Eigen::Matrix2d g;
  g << pxy, phi_derivative(p, 0, 2), -phi_derivative(p, 2, 0), -pxy;
  return g;
}

double ExactSolution::omega(const Point& p) const
{
  return -phi_derivative(p, 2, 0) - phi_derivative(p, 0, 2);
}

Eigen::Vector2d ExactSolution::grad_omega(const Point& p) const
{
  return {-phi_derivative(p, 3, 0) - phi_derivative(p, 1, 2), -phi_derivative(p, 2, 1) - phi_derivative(p, 0, 3)};
}

double ExactSolution::pressure(const Point& p) const
{
  if (zero_)
    return 0.0;
  const double x = p.x(), y = p.y();
  return kPi * kPi * (x * y * y * std::cos(2.0 * kPi * x * x * y) - x * x * y * std::sin(2.0 * kPi * x * y)) - 0.125;
}

Eigen::Vector2d ExactSolution::grad_pressure(const Point& p) const
{
  if (zero_)
    return Eigen::Vector2d::Zero();
  const double x = p.x(), y = p.y();
  const double a = 2.0 * kPi * x * x * y, b = 2.0 * kPi * x * y;
  const double ca = std::cos(a), sa = std::sin(a), cb = std::cos(b), sb = std::sin(b);
  const double dx = y * y * ca - 4.0 * kPi * x * x * y * y * y * sa - (2.0 * x * y * sb + 2.0 * kPi * x * x * y * y * cb);
  const double dy = 2.0 * x * y * ca - 2.0 * kPi * x * x * x * y * y * sa - (x * x * sb + 2.0 * kPi * x * x * x * y * cb);
  return {kPi * kPi * dx, kPi * kPi * dy};
}

Eigen::Vector2d Forcing::operator()(const Point& p) const
{
  if (exact_.is_zero())
    return Eigen::Vector2d::Zero();
  const auto nu = coeffs_.nu(p);
  const Eigen::Matrix2d gu = exact_.grad_u(p);
  const Eigen::Matrix2d strain = 0.5 * (gu + gu.transpose());
  const Eigen::Vector2d gw = exact_.grad_omega(p);
  const Eigen::Vector2d curl_omega(gw.y(), -gw.x());
  return nu.value * coeffs_.kinv * exact_.u(p) + nu.value * curl_omega - 2.0 * strain * nu.gradient
         + exact_.grad_pressure(p);
}

double ellipticity_diagnostic(const ProblemCoefficients& coeffs, const Mesh& mesh, int quad_degree)
{
  const auto rule = triangle_rule(quad_degree);
  double max_grad = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto geo = CellGeometry::of(mesh, c);
    for (const auto& xi : rule.points)
      max_grad = std::max(max_grad, coeffs.nu(geo.map(xi)).gradient.norm());
  }
  return 4.0 * max_grad * max_grad / (coeffs.sigma_min() * coeffs.nu0() * coeffs.nu0());
}

double exact_pressure_mean(const ExactSolution& exact, int n, int degree)
{
  const auto mesh = build_structured_mesh(n);
  const auto rule = triangle_rule(degree);
  double total = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto geo = CellGeometry::of(mesh, c);
    double cell_sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q)
      cell_sum += rule.weights[q] * exact.pressure(geo.map(rule.points[q]));
    total += cell_sum * geo.det;
  }
  return total;
}

}  // namespace brinkman
