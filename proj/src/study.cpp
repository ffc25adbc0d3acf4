#include "brinkman/study.hpp"

#include <charconv>
#include <cstdio>
#include <iomanip>
#include <regex>
#include <sstream>

#include "brinkman/vtk.hpp"

namespace brinkman {

void parse_viscosity(const std::string& text, StudyConfig& config)
{
  if (text == "a") {
    config.viscosity = ViscosityKind::SmoothA;
    return;
  }
  if (text == "b") {
    config.viscosity = ViscosityKind::SteepB;
    return;
  }
  static const std::regex constant(R"(constant\(\s*([-+0-9.eE]+)\s*\))");
  std::smatch match;
  if (std::regex_match(text, match, constant)) {
    config.viscosity = ViscosityKind::Constant;
    try {
      config.nu_constant = std::stod(match[1]);
    } catch (const std::exception&) {
      throw ConfigError("invalid constant viscosity '" + text + "'");
    }
    return;
  }
  throw ConfigError("viscosity must be a, b or constant(<value>), got '" + text + "'");
}

ElementChoice parse_element(const std::string& text)
{
  if (text == "taylor-hood")
    return ElementChoice::TaylorHood;
  if (text == "mini")
    return ElementChoice::Mini;
  throw ConfigError("element must be taylor-hood or mini, got '" + text + "'");
}

std::string viscosity_label(const StudyConfig& config)
{
  switch (config.viscosity) {
  case ViscosityKind::SmoothA: return "a";
  case ViscosityKind::SteepB: return "b";
  case ViscosityKind::Constant: break;
  }
  std::ostringstream s;
  s << "constant(" << config.nu_constant << ")";
  return s.str();
}

ProblemCoefficients StudyConfig::coefficients() const
{
  Viscosity nu = Viscosity::constant(nu_constant);
  if (viscosity == ViscosityKind::SmoothA)
    nu = Viscosity::smooth_a(nu0, nu1);
  else if (viscosity == ViscosityKind::SteepB)
    nu = Viscosity::steep_b(nu0, nu1);
  if (!(k_perm > 0.0))
    throw ConfigError("kperm must be positive");
  auto coeffs = ProblemCoefficients::with_defaults(nu, k_perm);
  if (kappa1)
    coeffs.kappa1 = *kappa1;
  if (kappa2)
    coeffs.kappa2 = *kappa2;
  return coeffs;
}

ExactSolution StudyConfig::exact() const
{
  return forcing == ForcingChoice::Zero ? ExactSolution::zero() : ExactSolution::manufactured();
}

void StudyConfig::validate() const
{
  if (levels < 1 || levels > 7)
    throw ConfigError("levels must lie in [1, 7], got " + std::to_string(levels));
  for (int d : {quad_assembly, quad_rhs, quad_error})
    if (d < 1 || d > kMaxQuadratureDegree)
      throw ConfigError("quadrature degrees must lie in [1, " + std::to_string(kMaxQuadratureDegree) + "]");
  if (quad_error < 10)
    throw ConfigError("error quadrature degree must be at least 10");
  try {
    coefficients().validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

int cells_per_side(int level)
{
  return 2 << (level - 1);
}

LevelSolution solve_level(const StudyConfig& config, int level)
{
  LevelSolution out;
  out.level = level;
  out.mesh = std::make_shared<const Mesh>(build_structured_mesh(cells_per_side(level)));
  out.spaces = std::make_unique<SpaceSet>(config.element == ElementChoice::Mini ? SpaceSet::mini(out.mesh)
                                                                                : SpaceSet::taylor_hood(out.mesh));
  const auto coeffs = config.coefficients();
  const Forcing forcing(coeffs, config.exact());
  AssemblyOptions options;
  options.quad_degree = config.quad_assembly;
  options.rhs_degree = config.quad_rhs;
  BlockSystem system;
  try {
    system = assemble(*out.spaces, coeffs, forcing, options);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  out.layout = system.layout;
  try {
    auto result = lu_solve(system.matrix, system.rhs);
    out.solution = std::move(result.solution);
    out.solve = result.report;
  } catch (const std::exception& e) {
    throw SolverFailure(level, e.what());
  }
  return out;
}

StudyResult run_convergence_study(const StudyConfig& config, std::ostream* log)
{
  config.validate();
  StudyResult result;
  result.exact_pressure_mean = exact_pressure_mean(config.exact());
  for (int level = 1; level <= config.levels; ++level) {
    const auto sol = solve_level(config, level);
    auto report = compute_errors(*sol.spaces, sol.layout, sol.solution, config.exact(), config.quad_error,
                                 result.exact_pressure_mean);
    report.level = level;
    result.reports.push_back(report);
    result.solves.push_back(sol.solve);
    result.constraints.push_back(constraint_residuals(*sol.spaces, sol.layout, sol.solution, config.quad_assembly));
    if (log)
      *log << "level " << level << ": dof=" << report.dof << " residual=" << sol.solve.residual_norm << '\n';
  }
  convergence_rates(result.reports);
  return result;
}

SingleSolveSummary run_single_solve(const StudyConfig& config, int level)
{
  config.validate();
  if (level < 1 || level > 7)
    throw ConfigError("level must lie in [1, 7], got " + std::to_string(level));
  const auto sol = solve_level(config, level);
  SingleSolveSummary s;
  s.dof = sol.layout.size;
  s.h = sol.mesh->h();
  s.solve = sol.solve;
  s.ellipticity = ellipticity_diagnostic(config.coefficients(), *sol.mesh, config.quad_assembly);
  s.constraints = constraint_residuals(*sol.spaces, sol.layout, sol.solution, config.quad_assembly);
  s.errors = compute_errors(*sol.spaces, sol.layout, sol.solution, config.exact(), config.quad_error,
                            exact_pressure_mean(config.exact()));
  s.errors.level = level;
  if (!config.out_vtk.empty())
    s.vtk_files = write_fields_vtk(*sol.spaces, DiscreteFields::split(sol.layout, sol.solution), config.out_vtk, level);
  return s;
}

namespace {

std::string significant(double value, int digits)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string fixed(const std::optional<double>& value, int decimals)
{
  if (!value)
    return "--";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, *value);
  return buf;
}

std::string exact_text(double value)
{
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, value);
  return {buf, r.ptr};
}

std::string exact_text(const std::optional<double>& value)
{
  return value ? exact_text(*value) : std::string();
}

}  // namespace

std::string format_table(const std::vector<ErrorReport>& reports)
{
  std::ostringstream out;
  out << std::right << std::setw(8) << "DoF" << std::setw(9) << "h" << std::setw(12) << "err_u" << std::setw(8) << "rate"
      << std::setw(12) << "err_w" << std::setw(8) << "rate" << std::setw(12) << "err_p" << std::setw(8) << "rate" << '\n';
  for (const auto& r : reports) {
    char h[32];
    std::snprintf(h, sizeof h, "%.4f", r.h);
    out << std::setw(8) << r.dof << std::setw(9) << h << std::setw(12) << significant(r.err_u_h1, 5) << std::setw(8)
        << fixed(r.rate_u, 3) << std::setw(12) << significant(r.err_w_l2, 5) << std::setw(8) << fixed(r.rate_w, 3)
        << std::setw(12) << significant(r.err_p_l2, 5) << std::setw(8) << fixed(r.rate_p, 3) << '\n';
  }
  return out.str();
}

std::string format_csv(const std::vector<ErrorReport>& reports)
{
  std::ostringstream out;
  out << "dof,h,err_u_h1,rate_u,err_w_l2,rate_w,err_p_l2,rate_p\n";
  for (const auto& r : reports)
    out << r.dof << ',' << exact_text(r.h) << ',' << exact_text(r.err_u_h1) << ',' << exact_text(r.rate_u) << ','
        << exact_text(r.err_w_l2) << ',' << exact_text(r.rate_w) << ',' << exact_text(r.err_p_l2) << ','
        << exact_text(r.rate_p) << '\n';
  return out.str();
}

std::vector<ErrorReport> parse_csv(const std::string& text)
{
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "dof,h,err_u_h1,rate_u,err_w_l2,rate_w,err_p_l2,rate_p")
    throw std::invalid_argument("parse_csv: unexpected header");

  auto number = [](const std::string& field) {
    double v = 0.0;
    const auto r = std::from_chars(field.data(), field.data() + field.size(), v);
    if (r.ec != std::errc() || r.ptr != field.data() + field.size())
      throw std::invalid_argument("parse_csv: bad number '" + field + "'");
    return v;
  };
  auto optional_number = [&](const std::string& field) -> std::optional<double> {
    if (field.empty())
      return std::nullopt;
    return number(field);
  };

  std::vector<ErrorReport> reports;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos)
        break;
      start = comma + 1;
    }
    if (fields.size() != 8)
      throw std::invalid_argument("parse_csv: expected 8 fields in '" + line + "'");
    ErrorReport r;
    r.level = static_cast<int>(reports.size()) + 1;
    r.dof = std::stoi(fields[0]);
    r.h = number(fields[1]);
    r.err_u_h1 = number(fields[2]);
    r.rate_u = optional_number(fields[3]);
    r.err_w_l2 = number(fields[4]);
    r.rate_w = optional_number(fields[5]);
    r.err_p_l2 = number(fields[6]);
    r.rate_p = optional_number(fields[7]);
    reports.push_back(r);
  }
  return reports;
}

}  // namespace brinkman
