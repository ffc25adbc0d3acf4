#pragma once

#include <string>

#include <Eigen/Core>

#include "brinkman/mesh.hpp"
#include "brinkman/quadrature.hpp"

namespace brinkman {

struct ValueGradient {
  double value = 0.0;
  Eigen::Vector2d gradient = Eigen::Vector2d::Zero();
};

/// nu_a = nu0 + (nu1 - nu0) x^2 (1-x) y^2 (1-y) * 721/16.
ValueGradient viscosity_a(double x, double y, double nu0, double nu1);

/// nu_b = nu0 + (nu1 - nu0) exp(-1e13 [(x-1/2)^10 + (y-1/2)^10]).
/// Exponents below -700 return exactly nu0 with zero gradient.
ValueGradient viscosity_b(double x, double y, double nu0, double nu1);

enum class ViscosityKind { Constant, SmoothA, SteepB };

/// Pointwise viscosity field with its bounds nu0 <= nu <= nu1.
class Viscosity {
public:
  static Viscosity constant(double value) { return Viscosity(ViscosityKind::Constant, value, value); }
  static Viscosity smooth_a(double nu0, double nu1) { return Viscosity(ViscosityKind::SmoothA, nu0, nu1); }
  static Viscosity steep_b(double nu0, double nu1) { return Viscosity(ViscosityKind::SteepB, nu0, nu1); }

  ViscosityKind kind() const { return kind_; }
  double nu0() const { return nu0_; }
  double nu1() const { return nu1_; }
  std::string name() const;

  ValueGradient operator()(const Point& p) const;

private:
  Viscosity(ViscosityKind kind, double nu0, double nu1) : kind_(kind), nu0_(nu0), nu1_(nu1) {}

  ViscosityKind kind_;
  double nu0_;
  double nu1_;
};

/// Coefficients of the augmented velocity-vorticity-pressure Brinkman problem
/// with isotropic permeability K = k_perm * I.
struct ProblemCoefficients {
  Viscosity nu = Viscosity::constant(1.0);
  double kinv = 1.0;
  double kappa1 = 1.0;
  double kappa2 = 0.5;

  double nu0() const { return nu.nu0(); }
  double nu1() const { return nu.nu1(); }
  double sigma_min() const { return kinv; }
  double sigma_max() const { return kinv; }

  /// Default augmentation kappa1 = 1, kappa2 = nu0 / 2.
  static ProblemCoefficients with_defaults(const Viscosity& nu, double k_perm);

  /// Throws std::invalid_argument unless 0 < nu0 <= nu1, kinv > 0,
  /// kappa1 in (1/2, 3/2) and kappa2 > nu0 / 4.
  void validate() const;
  /// Checks nu0 <= nu <= nu1 at every quadrature point of the mesh.
  void validate_on(const Mesh& mesh, const QuadratureRule& rule) const;
};

/// Exact fields of the manufactured solution (or identically zero fields).
///
/// phi = 1000 x^2 (1-x)^4 y^3 (1-y)^2, u = (d_y phi, -d_x phi),
/// omega = d_x u_2 - d_y u_1 = -lap(phi),
/// p = pi^2 (x y^2 cos(2 pi x^2 y) - x^2 y sin(2 pi x y)) - 1/8.
class ExactSolution {
public:
  static ExactSolution manufactured() { return ExactSolution(false); }
  static ExactSolution zero() { return ExactSolution(true); }

  bool is_zero() const { return zero_; }

  double phi(const Point& p) const;
  /// All partial derivatives d^{a+b} phi / dx^a dy^b for a, b <= 3.
  double phi_derivative(const Point& p, int a, int b) const;

  Eigen::Vector2d u(const Point& p) const;
  /// grad_u(i, j) = d u_i / d x_j.
  Eigen::Matrix2d grad_u(const Point& p) const;
  double omega(const Point& p) const;
  Eigen::Vector2d grad_omega(const Point& p) const;
  double pressure(const Point& p) const;
  Eigen::Vector2d grad_pressure(const Point& p) const;

private:
  explicit ExactSolution(bool zero) : zero_(zero) {}
  bool zero_;
};

/// f = nu kinv u + nu curl(omega) - 2 eps(u) grad(nu) + grad(p),
/// with curl(omega) = (d_y omega, -d_x omega).
class Forcing {
public:
  Forcing(ProblemCoefficients coeffs, ExactSolution exact) : coeffs_(std::move(coeffs)), exact_(exact) {}

  static Forcing zero() { return Forcing(ProblemCoefficients{}, ExactSolution::zero()); }

  Eigen::Vector2d operator()(const Point& p) const;

private:
  ProblemCoefficients coeffs_;
  ExactSolution exact_;
};

/// 4 |grad nu|_inf^2 / (sigma_min nu0^2), with the sup norm sampled at every
/// quadrature point of the mesh. Coercivity of the continuous form is
/// guaranteed when the value is below 1/4.
double ellipticity_diagnostic(const ProblemCoefficients& coeffs, const Mesh& mesh, int quad_degree = 6);

/// Mean of the exact pressure over the unit square, by degree-`degree`
/// quadrature on the structured mesh with n cells per side.
double exact_pressure_mean(const ExactSolution& exact, int n = 64, int degree = 10);

}  // namespace brinkman
