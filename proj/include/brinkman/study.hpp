#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "brinkman/analysis.hpp"
#include "brinkman/assembly.hpp"
#include "brinkman/linalg.hpp"
#include "brinkman/model.hpp"

namespace brinkman {

class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class SolverFailure : public std::runtime_error {
public:
  SolverFailure(int level, const std::string& what)
      : std::runtime_error("level " + std::to_string(level) + ": " + what), level_(level) {}
  int level() const { return level_; }

private:
  int level_;
};

enum class ElementChoice { TaylorHood, Mini };
enum class ForcingChoice { Manufactured, Zero };

struct StudyConfig {
  ViscosityKind viscosity = ViscosityKind::SmoothA;
  double nu_constant = 1.0;  // used when viscosity == Constant
  ElementChoice element = ElementChoice::TaylorHood;
  ForcingChoice forcing = ForcingChoice::Manufactured;
  int levels = 5;
  std::optional<double> kappa1;  // nullopt: 1
  std::optional<double> kappa2;  // nullopt: nu0 / 2
  double nu0 = 1e-4;
  double nu1 = 1.0;
  double k_perm = 1e-6;
  int quad_assembly = 6;
  int quad_rhs = 10;
  int quad_error = 10;
  std::uint64_t seed = 20190901;
  std::string out_csv;
  std::string out_vtk;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
  ProblemCoefficients coefficients() const;
  ExactSolution exact() const;
};

/// Parses "a", "b" or "constant(<value>)".
void parse_viscosity(const std::string& text, StudyConfig& config);
ElementChoice parse_element(const std::string& text);
std::string viscosity_label(const StudyConfig& config);

/// Cells per side of refinement level `level` (1-based): 2, 4, 8, ...
int cells_per_side(int level);

struct LevelSolution {
  int level = 0;
  std::shared_ptr<const Mesh> mesh;
  std::unique_ptr<SpaceSet> spaces;
  SystemLayout layout;
  Eigen::VectorXd solution;
  SolveReport solve;
};

/// Build mesh and spaces, assemble and solve one level. Throws SolverFailure.
LevelSolution solve_level(const StudyConfig& config, int level);

struct StudyResult {
  std::vector<ErrorReport> reports;
  std::vector<SolveReport> solves;
  std::vector<ConstraintResiduals> constraints;
  double exact_pressure_mean = 0.0;
};

/// Levels 1..config.levels in sequence, errors and rates filled.
StudyResult run_convergence_study(const StudyConfig& config, std::ostream* log = nullptr);

struct SingleSolveSummary {
  int dof = 0;
  double h = 0.0;
  SolveReport solve;
  double ellipticity = 0.0;
  ConstraintResiduals constraints;
  ErrorReport errors;
  std::vector<std::string> vtk_files;
};

SingleSolveSummary run_single_solve(const StudyConfig& config, int level);

/// Aligned text table: DoF, h, err_u, rate, err_w, rate, err_p, rate.
std::string format_table(const std::vector<ErrorReport>& reports);

/// CSV with header dof,h,err_u_h1,rate_u,err_w_l2,rate_w,err_p_l2,rate_p;
/// reals printed round-trip exact, undefined rates empty.
std::string format_csv(const std::vector<ErrorReport>& reports);
std::vector<ErrorReport> parse_csv(const std::string& text);

}  // namespace brinkman
