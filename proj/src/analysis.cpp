#include "brinkman/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "brinkman/quadrature.hpp"

namespace brinkman {

DiscreteFields DiscreteFields::split(const SystemLayout& layout, const Eigen::VectorXd& solution)
{
  if (solution.size() != layout.size)
    throw std::invalid_argument("solution length does not match the system layout");
  return {solution.segment(layout.velocity_offset, layout.num_velocity()),
          solution.segment(layout.vorticity_offset, layout.num_vorticity()),
          solution.segment(layout.pressure_offset, layout.num_pressure())};
}

namespace {

template <class Body>
void for_each_cell(std::size_t ncells, Execution execution, Body&& body)
{
  if (execution == Execution::Serial) {
    for (std::size_t c = 0; c < ncells; ++c)
      body(c);
    return;
  }
#pragma omp parallel for schedule(static)
  for (long c = 0; c < static_cast<long>(ncells); ++c)
    body(static_cast<std::size_t>(c));
}

double local_value(const BasisTabulation& tab, std::size_t q, std::span<const int> dofs, const Eigen::VectorXd& coeffs)
{
  double v = 0.0;
  for (std::size_t i = 0; i < dofs.size(); ++i)
    v += tab.values(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i)) * coeffs(dofs[i]);
  return v;
}

}  // namespace

FieldErrors field_errors(const SpaceSet& spaces, const DiscreteFields& fields, const ExactSolution& exact,
                         int quad_degree, double exact_pressure_mean, Execution execution)
{
  const auto rule = triangle_rule(quad_degree);
  const auto tab_u = tabulate(spaces.velocity, rule.points);
  const auto tab_w = tabulate(spaces.vorticity, rule.points);
  const auto tab_p = tabulate(spaces.pressure, rule.points);
  const auto& mesh = spaces.mesh();
  const std::size_t ncells = mesh.num_cells();
  const int nb_u = spaces.velocity.basis().size();

  std::vector<double> cell_mean(ncells);
  for_each_cell(ncells, execution, [&](std::size_t c) {
    const auto geo = CellGeometry::of(mesh, c);
    const auto dofs = spaces.pressure.cell_dofs(c);
    double s = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q)
      s += rule.weights[q] * local_value(tab_p, q, dofs, fields.pressure);
    cell_mean[c] = s * std::abs(geo.det);
  });
  double discrete_mean = 0.0;
  for (double m : cell_mean)
    discrete_mean += m;
  const double shift = exact_pressure_mean - discrete_mean;  // |Omega| = 1

  std::vector<std::array<double, 4>> cell_err(ncells);
  for_each_cell(ncells, execution, [&](std::size_t c) {
    const auto geo = CellGeometry::of(mesh, c);
    const double jac = std::abs(geo.det);
    const auto udofs = spaces.velocity.cell_dofs(c);
    const auto wdofs = spaces.vorticity.cell_dofs(c);
    const auto pdofs = spaces.pressure.cell_dofs(c);
    std::array<double, 4> e{};
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point x = geo.map(rule.points[q]);
      const double w = rule.weights[q] * jac;
      Eigen::Vector2d uh = Eigen::Vector2d::Zero();
      Eigen::Matrix2d guh = Eigen::Matrix2d::Zero();
      for (int i = 0; i < nb_u; ++i) {
        const Eigen::Vector2d g =
            geo.inverse_transpose * Eigen::Vector2d(tab_u.grad_x(static_cast<Eigen::Index>(q), i), tab_u.grad_y(static_cast<Eigen::Index>(q), i));
        const double phi = tab_u.values(static_cast<Eigen::Index>(q), i);
        for (int comp = 0; comp < 2; ++comp) {
          const double coef = fields.velocity(udofs[static_cast<std::size_t>(2 * i + comp)]);
          uh(comp) += phi * coef;
          guh.row(comp) += coef * g.transpose();
        }
      }
      const double wh = local_value(tab_w, q, wdofs, fields.vorticity);
      const double ph = local_value(tab_p, q, pdofs, fields.pressure);
      e[0] += w * (exact.u(x) - uh).squaredNorm();
      e[1] += w * (exact.grad_u(x) - guh).squaredNorm();
      e[2] += w * std::pow(exact.omega(x) - wh, 2);
      e[3] += w * std::pow(exact.pressure(x) - ph - shift, 2);
    }
    cell_err[c] = e;
  });

  std::array<double, 4> total{};
  for (const auto& e : cell_err)
    for (int k = 0; k < 4; ++k)
      total[static_cast<std::size_t>(k)] += e[static_cast<std::size_t>(k)];
  return {std::sqrt(total[0]), std::sqrt(total[1]), std::sqrt(total[2]), std::sqrt(total[3])};
}

ErrorReport compute_errors(const SpaceSet& spaces, const SystemLayout& layout, const Eigen::VectorXd& solution,
                           const ExactSolution& exact, int quad_degree, double exact_pressure_mean)
{
  const auto e = field_errors(spaces, DiscreteFields::split(layout, solution), exact, quad_degree, exact_pressure_mean);
  ErrorReport r;
  r.dof = layout.size;
  r.h = spaces.mesh().h();
  r.err_u_h1 = e.u_h1();
  r.err_w_l2 = e.w_l2;
  r.err_p_l2 = e.p_l2;
  return r;
}

void convergence_rates(std::vector<ErrorReport>& reports)
{
  auto rate = [](double coarse, double fine) -> std::optional<double> {
    if (!(coarse > 0.0) || !(fine > 0.0))
      return std::nullopt;
    return std::log2(coarse / fine);
  };
  for (std::size_t i = 0; i < reports.size(); ++i) {
    auto& r = reports[i];
    if (i == 0) {
      r.rate_u = r.rate_w = r.rate_p = std::nullopt;
      continue;
    }
    const auto& prev = reports[i - 1];
    r.rate_u = rate(prev.err_u_h1, r.err_u_h1);
    r.rate_w = rate(prev.err_w_l2, r.err_w_l2);
    r.rate_p = rate(prev.err_p_l2, r.err_p_l2);
  }
}

double coercivity_constant(const ProblemCoefficients& c)
{
  const double nu0 = c.nu0();
  return std::min({c.sigma_min() * nu0 / 2.0, nu0 / 2.0 * (c.kappa1 - 0.5), c.kappa2 - nu0 / 4.0,
                   nu0 / 2.0 * (1.5 - c.kappa1)});
}

double coercivity_check(const SpaceSet& spaces, const ProblemCoefficients& coeffs, int quad_degree, int trials,
                        std::uint64_t seed)
{
  const EnergyForm energy(spaces, coeffs, quad_degree);
  const TripleNorm triple(spaces.velocity, quad_degree);
  const auto wmass = mass_matrix(spaces.vorticity, quad_degree);
  const int nu = spaces.velocity.ndof();
  const int nw = spaces.vorticity.ndof();

  std::vector<bool> fixed(static_cast<std::size_t>(nu), false);
  for (int d : spaces.velocity.boundary_dofs())
    fixed[static_cast<std::size_t>(d)] = true;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double min_quotient = std::numeric_limits<double>::infinity();
  Eigen::VectorXd x(nu + nw);
  for (int t = 0; t < trials; ++t) {
    for (int i = 0; i < nu + nw; ++i)
      x(i) = (i < nu && fixed[static_cast<std::size_t>(i)]) ? 0.0 : dist(rng);
    const Eigen::VectorXd v = x.head(nu), theta = x.tail(nw);
    const double norm2 = v.dot(triple.gram().multiply(v)) + theta.dot(wmass.multiply(theta));
    if (norm2 <= 0.0)
      continue;
    min_quotient = std::min(min_quotient, energy(x, x) / norm2);
  }
  return min_quotient;
}

double infsup_estimate(const SpaceSet& spaces, int quad_degree, bool zero_mean)
{
  if (spaces.mesh().n() > kMaxInfSupCells)
    throw std::invalid_argument("infsup_estimate: dense computation limited to n <= " + std::to_string(kMaxInfSupCells)
                                + ", got n = " + std::to_string(spaces.mesh().n()));

  AssemblyOptions options;
  options.quad_degree = quad_degree;
  options.rhs_degree = 1;
  options.apply_dirichlet = false;
  const auto system = assemble(spaces, ProblemCoefficients{}, Forcing::zero(), options);
  const auto& layout = system.layout;

  std::vector<int> free;
  {
    std::vector<bool> fixed(static_cast<std::size_t>(layout.num_velocity()), false);
    for (int d : spaces.velocity.boundary_dofs())
      fixed[static_cast<std::size_t>(d)] = true;
    for (int i = 0; i < layout.num_velocity(); ++i)
      if (!fixed[static_cast<std::size_t>(i)])
        free.push_back(i);
  }
  const auto nf = static_cast<Eigen::Index>(free.size());
  const Eigen::MatrixXd b_full =
      sub_block(system.matrix, layout.pressure_offset, layout.multiplier, 0, layout.num_velocity()).to_dense();
  const Eigen::MatrixXd v_full = velocity_triple_gram(spaces.velocity, quad_degree).to_dense();
  Eigen::MatrixXd b(b_full.rows(), nf), v(nf, nf);
  for (Eigen::Index j = 0; j < nf; ++j) {
    b.col(j) = b_full.col(free[static_cast<std::size_t>(j)]);
    for (Eigen::Index i = 0; i < nf; ++i)
      v(i, j) = v_full(free[static_cast<std::size_t>(i)], free[static_cast<std::size_t>(j)]);
  }
  const Eigen::MatrixXd q = mass_matrix(spaces.pressure, quad_degree).to_dense();

  // S = B V^{-1} B^T, then min over q of q^T S q / q^T Q q.
  const Eigen::LLT<Eigen::MatrixXd> vchol(v);
  Eigen::MatrixXd s = b * vchol.solve(b.transpose());
  s = 0.5 * (s + s.transpose());

  Eigen::MatrixXd basis = Eigen::MatrixXd::Identity(q.rows(), q.rows());
  if (zero_mean) {
    const Eigen::VectorXd integrals = q * Eigen::VectorXd::Ones(q.rows());
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(integrals);
    const Eigen::MatrixXd full = qr.householderQ();
    basis = full.rightCols(q.rows() - 1);
  }
  const Eigen::MatrixXd sr = basis.transpose() * s * basis;
  const Eigen::MatrixXd qr = basis.transpose() * q * basis;
  const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(sr, qr);
  return std::sqrt(std::max(0.0, eig.eigenvalues().minCoeff()));
}

ConstraintResiduals constraint_residuals(const SpaceSet& spaces, const SystemLayout& layout,
                                         const Eigen::VectorXd& solution, int quad_degree)
{
  const auto fields = DiscreteFields::split(layout, solution);
  const auto rule = triangle_rule(quad_degree);
  const auto tab_u = tabulate(spaces.velocity, rule.points);
  const auto tab_p = tabulate(spaces.pressure, rule.points);
  const auto& mesh = spaces.mesh();
  const int nb_u = spaces.velocity.basis().size();
  const int nb_p = spaces.pressure.basis().size();

  Eigen::VectorXd b = Eigen::VectorXd::Zero(spaces.pressure.ndof());
  double mean = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto geo = CellGeometry::of(mesh, c);
    const double jac = std::abs(geo.det);
    const auto udofs = spaces.velocity.cell_dofs(c);
    const auto pdofs = spaces.pressure.cell_dofs(c);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto qi = static_cast<Eigen::Index>(q);
      const double w = rule.weights[q] * jac;
      double div = 0.0;
      for (int i = 0; i < nb_u; ++i) {
        const Eigen::Vector2d g = geo.inverse_transpose * Eigen::Vector2d(tab_u.grad_x(qi, i), tab_u.grad_y(qi, i));
        div += g.x() * fields.velocity(udofs[static_cast<std::size_t>(2 * i)])
               + g.y() * fields.velocity(udofs[static_cast<std::size_t>(2 * i + 1)]);
      }
      for (int m = 0; m < nb_p; ++m) {
        b(pdofs[static_cast<std::size_t>(m)]) -= w * tab_p.values(qi, m) * div;
        mean += w * tab_p.values(qi, m) * fields.pressure(pdofs[static_cast<std::size_t>(m)]);
      }
    }
  }

  const Eigen::SparseMatrix<double> mass = mass_matrix(spaces.pressure, quad_degree).to_eigen();
  const Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(mass);
  const double dual = std::sqrt(std::max(0.0, b.dot(ldlt.solve(b))));
  const auto h1 = velocity_h1_gram(spaces.velocity, quad_degree);
  const double unorm = std::sqrt(std::max(0.0, fields.velocity.dot(h1.multiply(fields.velocity))));
  return {std::abs(mean), unorm > 0.0 ? dual / unorm : dual};
}

SolutionNorms solution_norms(const SpaceSet& spaces, const SystemLayout& layout, const Eigen::VectorXd& solution,
                             const Forcing& forcing, int quad_degree)
{
  const auto fields = DiscreteFields::split(layout, solution);
  const TripleNorm triple(spaces.velocity, quad_degree);
  const auto wmass = mass_matrix(spaces.vorticity, quad_degree);
  const auto pmass = mass_matrix(spaces.pressure, quad_degree);
  SolutionNorms n;
  const double v2 = std::pow(triple(fields.velocity), 2);
  n.velocity_vorticity = std::sqrt(v2 + fields.vorticity.dot(wmass.multiply(fields.vorticity)));
  n.pressure = std::sqrt(std::max(0.0, fields.pressure.dot(pmass.multiply(fields.pressure))));

  const auto rule = triangle_rule(quad_degree);
  double f2 = 0.0;
  for (std::size_t c = 0; c < spaces.mesh().num_cells(); ++c) {
    const auto geo = CellGeometry::of(spaces.mesh(), c);
    for (std::size_t q = 0; q < rule.size(); ++q)
      f2 += rule.weights[q] * std::abs(geo.det) * forcing(geo.map(rule.points[q])).squaredNorm();
  }
  n.forcing = std::sqrt(f2);
  return n;
}

}  // namespace brinkman
