// Convergence studies and single solves for the augmented
// velocity-vorticity-pressure Brinkman discretisation.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "brinkman/study.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

std::optional<double> parse_kappa(const std::string& text, const char* name)
{
  if (text.empty() || text == "auto")
    return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size())
      throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw brinkman::ConfigError(std::string(name) + " must be a number or 'auto', got '" + text + "'");
  }
}

struct Options {
  std::string viscosity = "a";
  std::string element = "taylor-hood";
  std::string forcing = "manufactured";
  std::string kappa1 = "auto";
  std::string kappa2 = "auto";
  int level = 1;
  brinkman::StudyConfig config;
};

void add_common(CLI::App& app, Options& o)
{
  app.set_config("--config", "", "key=value configuration file");
  app.add_option("--viscosity", o.viscosity, "a | b | constant(<value>)");
  app.add_option("--element", o.element, "taylor-hood | mini");
  app.add_option("--forcing", o.forcing, "manufactured | zero");
  app.add_option("--levels", o.config.levels, "number of levels, coarsest n=2");
  app.add_option("--kappa1", o.kappa1, "augmentation parameter or 'auto' (1)");
  app.add_option("--kappa2", o.kappa2, "augmentation parameter or 'auto' (nu0/2)");
  app.add_option("--nu0", o.config.nu0, "lower viscosity bound");
  app.add_option("--nu1", o.config.nu1, "upper viscosity bound");
  app.add_option("--kperm", o.config.k_perm, "isotropic permeability K = kperm I");
  app.add_option("--quad-assembly", o.config.quad_assembly, "quadrature degree of the bilinear forms");
  app.add_option("--quad-rhs", o.config.quad_rhs, "quadrature degree of the load vector");
  app.add_option("--quad-error", o.config.quad_error, "quadrature degree of the error norms");
  app.add_option("--seed", o.config.seed, "seed for randomized diagnostics");
  app.add_option("--out-csv", o.config.out_csv, "write the error table as CSV");
  app.add_option("--out-vtk", o.config.out_vtk, "VTK file prefix");
}

brinkman::StudyConfig finalize(Options& o)
{
  auto config = o.config;
  brinkman::parse_viscosity(o.viscosity, config);
  config.element = brinkman::parse_element(o.element);
  if (o.forcing == "manufactured")
    config.forcing = brinkman::ForcingChoice::Manufactured;
  else if (o.forcing == "zero")
    config.forcing = brinkman::ForcingChoice::Zero;
  else
    throw brinkman::ConfigError("forcing must be manufactured or zero, got '" + o.forcing + "'");
  config.kappa1 = parse_kappa(o.kappa1, "kappa1");
  config.kappa2 = parse_kappa(o.kappa2, "kappa2");
  config.validate();
  return config;
}

int run_study(Options& o)
{
  const auto config = finalize(o);
  const auto result = brinkman::run_convergence_study(config, &std::cerr);
  std::cout << "# viscosity " << brinkman::viscosity_label(config) << ", element "
            << (config.element == brinkman::ElementChoice::Mini ? "mini" : "taylor-hood")
            << ", exact pressure mean " << result.exact_pressure_mean << " (subtracted)\n";
  std::cout << brinkman::format_table(result.reports);
  if (!config.out_csv.empty()) {
    std::ofstream csv(config.out_csv, std::ios::binary);
    if (!csv)
      throw brinkman::ConfigError("cannot write " + config.out_csv);
    csv << brinkman::format_csv(result.reports);
  }
  return 0;
}

int run_solve(Options& o)
{
  const auto config = finalize(o);
  const auto s = brinkman::run_single_solve(config, o.level);
  std::cout << "dof=" << s.dof << '\n'
            << "h=" << s.h << '\n'
            << "residual=" << s.solve.residual_norm << '\n'
            << "factor_nnz=" << s.solve.factor_nnz << '\n'
            << "pivot_growth=" << s.solve.pivot_growth << '\n'
            << "ellipticity=" << s.ellipticity << (s.ellipticity < 0.25 ? " (< 1/4)" : " (>= 1/4, hypothesis violated)")
            << '\n'
            << "divergence_residual=" << s.constraints.divergence << '\n'
            << "pressure_mean=" << s.constraints.pressure_mean << '\n'
            << "err_u_h1=" << s.errors.err_u_h1 << '\n'
            << "err_w_l2=" << s.errors.err_w_l2 << '\n'
            << "err_p_l2=" << s.errors.err_p_l2 << '\n';
  for (const auto& f : s.vtk_files)
    std::cout << "wrote " << f << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Augmented velocity-vorticity-pressure Brinkman solver"};
  app.require_subcommand(1);

  Options opts;
  add_common(app, opts);
  auto* study = app.add_subcommand("study", "run a convergence study over refinement levels")->fallthrough();
  auto* solve = app.add_subcommand("solve", "solve a single refinement level")->fallthrough();
  solve->add_option("--level", opts.level, "refinement level (n = 2^level)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (study->parsed())
      return run_study(opts);
    return run_solve(opts);
  } catch (const brinkman::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const brinkman::SolverFailure& e) {
    std::cerr << "solver failure at " << e.what() << '\n';
    return kExitSolver;
  }
}
