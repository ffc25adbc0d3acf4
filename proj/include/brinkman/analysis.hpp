#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "brinkman/assembly.hpp"
#include "brinkman/model.hpp"

namespace brinkman {

struct ErrorReport {
  int level = 0;
  int dof = 0;
  double h = 0.0;
  double err_u_h1 = 0.0;
  double err_w_l2 = 0.0;
  double err_p_l2 = 0.0;
  std::optional<double> rate_u;
  std::optional<double> rate_w;
  std::optional<double> rate_p;
};

enum class Execution { Serial, Parallel };

/// Discrete fields split out of a solution vector laid out per SystemLayout.
struct DiscreteFields {
  Eigen::VectorXd velocity;
  Eigen::VectorXd vorticity;
  Eigen::VectorXd pressure;

  static DiscreteFields split(const SystemLayout& layout, const Eigen::VectorXd& solution);
};

struct FieldErrors {
  double u_l2 = 0.0;
  double u_h1_semi = 0.0;
  double w_l2 = 0.0;
  double p_l2 = 0.0;

  double u_h1() const { return std::sqrt(u_l2 * u_l2 + u_h1_semi * u_h1_semi); }
};

/// Errors by cell-wise quadrature. The pressure error is taken between
/// p - exact_pressure_mean and p_h minus its own mean. Per-cell contributions
/// are summed in cell order, so Serial and Parallel agree bit for bit.
FieldErrors field_errors(const SpaceSet& spaces, const DiscreteFields& fields, const ExactSolution& exact,
                         int quad_degree, double exact_pressure_mean, Execution execution = Execution::Parallel);

/// Table row for a solved system: H1 velocity, L2 vorticity and L2 pressure
/// errors with mesh size and total DoF count.
ErrorReport compute_errors(const SpaceSet& spaces, const SystemLayout& layout, const Eigen::VectorXd& solution,
                           const ExactSolution& exact, int quad_degree, double exact_pressure_mean);

/// rate_i = log2(e_{i-1} / e_i); undefined when either error is zero.
void convergence_rates(std::vector<ErrorReport>& reports);

/// Minimum of A(x,x) / (|||v|||^2 + |theta|^2) over `trials` random vectors
/// with zero Dirichlet entries, drawn from a seeded generator.
double coercivity_check(const SpaceSet& spaces, const ProblemCoefficients& coeffs, int quad_degree, int trials,
                        std::uint64_t seed = 20190901);

/// alpha = min{sigma_min nu0/2, nu0/2 (kappa1 - 1/2), kappa2 - nu0/4, nu0/2 (3/2 - kappa1)}.
double coercivity_constant(const ProblemCoefficients& coeffs);

inline constexpr int kMaxInfSupCells = 8;

/// Discrete inf-sup constant inf_q sup_v B(v,q) / (|||v||| |q|) by a dense
/// generalized eigenproblem. With zero_mean the infimum runs over pressures
/// orthogonal to constants. Throws std::invalid_argument for meshes finer
/// than kMaxInfSupCells per side.
double infsup_estimate(const SpaceSet& spaces, int quad_degree = 6, bool zero_mean = true);

struct ConstraintResiduals {
  double pressure_mean = 0.0;  // |(p_h, 1)|
  double divergence = 0.0;     // sup_q |B(u_h, q)| / |q|_0, relative to |u_h|_1
};

ConstraintResiduals constraint_residuals(const SpaceSet& spaces, const SystemLayout& layout,
                                         const Eigen::VectorXd& solution, int quad_degree = 6);

/// |||u_h||| + |omega_h| and |p_h| of a solution, and |f|_0.
struct SolutionNorms {
  double velocity_vorticity = 0.0;
  double pressure = 0.0;
  double forcing = 0.0;
};

SolutionNorms solution_norms(const SpaceSet& spaces, const SystemLayout& layout, const Eigen::VectorXd& solution,
                             const Forcing& forcing, int quad_degree = 10);

}  // namespace brinkman
