#include "brinkman/assembly.hpp"

#include <stdexcept>

#include <omp.h>

#include "brinkman/quadrature.hpp"

namespace brinkman {

SpaceSet SpaceSet::taylor_hood(std::shared_ptr<const Mesh> mesh, bool continuous_vorticity)
{
  return {build_space(mesh, ElementFamily::continuous(2, 2)),
          build_space(mesh, continuous_vorticity ? ElementFamily::continuous(1) : ElementFamily::discontinuous(1)),
          build_space(mesh, ElementFamily::continuous(1))};
}

SpaceSet SpaceSet::mini(std::shared_ptr<const Mesh> mesh)
{
  return {build_space(mesh, ElementFamily::mini(2)), build_space(mesh, ElementFamily::discontinuous(0)),
          build_space(mesh, ElementFamily::continuous(1))};
}

SystemLayout SystemLayout::of(const SpaceSet& spaces)
{
  SystemLayout l;
  l.velocity_offset = 0;
  l.vorticity_offset = spaces.velocity.ndof();
  l.pressure_offset = l.vorticity_offset + spaces.vorticity.ndof();
  l.multiplier = l.pressure_offset + spaces.pressure.ndof();
  l.size = l.multiplier + 1;
  return l;
}

namespace {

int polynomial_degree(const ElementFamily& family)
{
  return family.kind == ElementKind::MiniVelocity ? 3 : family.degree;
}

void check_spaces(const SpaceSet& spaces, const AssemblyOptions& options)
{
  if (spaces.velocity.mesh_ptr() != spaces.vorticity.mesh_ptr() || spaces.velocity.mesh_ptr() != spaces.pressure.mesh_ptr())
    throw std::invalid_argument("assemble: spaces are defined on different meshes");
  if (spaces.velocity.components() != 2 || spaces.vorticity.components() != 1 || spaces.pressure.components() != 1)
    throw std::invalid_argument("assemble: expected vector velocity, scalar vorticity and pressure");
  const int needed = 2 * polynomial_degree(spaces.velocity.family());
  if (options.quad_degree < needed)
    throw std::invalid_argument("assemble: quadrature degree " + std::to_string(options.quad_degree)
                                + " cannot integrate velocity mass terms exactly (need " + std::to_string(needed) + ")");
}

// Computes the local matrix and load vector of one cell.
//
// Local ordering: [velocity (2 per scalar function, interleaved) | vorticity
// | pressure | multiplier].
class CellKernel {
public:
  CellKernel(const SpaceSet& spaces, const ProblemCoefficients& coeffs, const Forcing& forcing, const AssemblyOptions& options)
      : spaces_(spaces), coeffs_(coeffs), forcing_(forcing), rule_(triangle_rule(options.quad_degree)),
        rhs_rule_(triangle_rule(options.rhs_degree)), tab_u_(tabulate(spaces.velocity, rule_.points)),
        tab_w_(tabulate(spaces.vorticity, rule_.points)), tab_p_(tabulate(spaces.pressure, rule_.points)),
        rhs_tab_u_(tabulate(spaces.velocity, rhs_rule_.points)), nu_(spaces.velocity.basis().size()),
        nw_(spaces.vorticity.basis().size()), np_(spaces.pressure.basis().size())
  {
  }

  int local_size() const { return 2 * nu_ + nw_ + np_ + 1; }
  int w_begin() const { return 2 * nu_; }
  int p_begin() const { return 2 * nu_ + nw_; }
  int lambda() const { return 2 * nu_ + nw_ + np_; }

  /// True for local (row, col) pairs that can couple.
  bool structural(int row, int col) const
  {
    const int br = block_of(row), bc = block_of(col);
    static constexpr bool pattern[4][4] = {
        {true, true, true, false},   // u
        {true, true, false, false},  // omega
        {true, false, false, true},  // p
        {false, false, true, false}, // lambda
    };
    return pattern[br][bc];
  }

  int structural_count() const
  {
    int count = 0;
    for (int r = 0; r < local_size(); ++r)
      for (int c = 0; c < local_size(); ++c)
        count += structural(r, c);
    return count;
  }

  /// Global index of local index `i` in cell `cell`.
  int global(std::size_t cell, int i, const SystemLayout& layout) const
  {
    if (i < w_begin())
      return layout.velocity_offset + spaces_.velocity.cell_dofs(cell)[i];
    if (i < p_begin())
      return layout.vorticity_offset + spaces_.vorticity.cell_dofs(cell)[i - w_begin()];
    if (i < lambda())
      return layout.pressure_offset + spaces_.pressure.cell_dofs(cell)[i - p_begin()];
    return layout.multiplier;
  }

  void compute(std::size_t cell, Eigen::MatrixXd& local, Eigen::VectorXd& load) const
  {
    const int n = local_size();
    local.setZero(n, n);
    load.setZero(n);
    const auto geo = CellGeometry::of(spaces_.mesh(), cell);
    const double jac = std::abs(geo.det);
    const Eigen::Matrix2d& jit = geo.inverse_transpose;
    const double kappa1_nu0 = coeffs_.kappa1 * coeffs_.nu0();
    const double kappa2 = coeffs_.kappa2;

    Eigen::VectorXd gx(nu_), gy(nu_), curl(2 * nu_), div(2 * nu_);
    for (std::size_t q = 0; q < rule_.size(); ++q) {
      const double w = rule_.weights[q] * jac;
      const Point x = geo.map(rule_.points[q]);
      const auto nu = coeffs_.nu(x);
      const double nux = nu.gradient.x(), nuy = nu.gradient.y();

      for (int i = 0; i < nu_; ++i) {
        const double rx = tab_u_.grad_x(q, i), ry = tab_u_.grad_y(q, i);
        gx(i) = jit(0, 0) * rx + jit(0, 1) * ry;
        gy(i) = jit(1, 0) * rx + jit(1, 1) * ry;
        // v = phi e_0: curl = -d_y phi, div = d_x phi; v = phi e_1: curl = d_x phi, div = d_y phi
        curl(2 * i) = -gy(i);
        curl(2 * i + 1) = gx(i);
        div(2 * i) = gx(i);
        div(2 * i + 1) = gy(i);
      }

      // velocity-velocity: (1), (5), (6), (8)
      for (int i = 0; i < nu_; ++i) {
        const double phi_i = tab_u_.values(q, i);
        for (int j = 0; j < nu_; ++j) {
          const double phi_j = tab_u_.values(q, j);
          const double mass = nu.value * coeffs_.kinv * phi_i * phi_j;
          const double gradnu_j = gx(j) * nux + gy(j) * nuy;
          const double dphi_j[2] = {gx(j), gy(j)};
          const double dnu[2] = {nux, nuy};
          for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) {
              const int r = 2 * i + c, s = 2 * j + d;
              double value = kappa1_nu0 * curl(s) * curl(r) + kappa2 * div(s) * div(r);
              // -2 (eps(u) grad nu) . v for u = phi_j e_d, v = phi_i e_c
              value -= phi_i * ((c == d ? gradnu_j : 0.0) + dphi_j[c] * dnu[d]);
              if (c == d)
                value += mass;
              local(r, s) += w * value;
            }
        }
      }

      // velocity rows, vorticity columns: (3) + (7) + (9)
      for (int a = 0; a < nw_; ++a) {
        const double psi = tab_w_.values(q, a);
        for (int i = 0; i < nu_; ++i) {
          const double phi_i = tab_u_.values(q, i);
          local(2 * i, w_begin() + a) += w * psi * ((nu.value - kappa1_nu0) * curl(2 * i) - nuy * phi_i);
          local(2 * i + 1, w_begin() + a) += w * psi * ((nu.value - kappa1_nu0) * curl(2 * i + 1) + nux * phi_i);
        }
      }

      // vorticity rows: (2) and (4)
      for (int b = 0; b < nw_; ++b) {
        const double psi_b = tab_w_.values(q, b);
        for (int a = 0; a < nw_; ++a)
          local(w_begin() + b, w_begin() + a) += w * nu.value * psi_b * tab_w_.values(q, a);
        for (int s = 0; s < 2 * nu_; ++s)
          local(w_begin() + b, s) -= w * nu.value * psi_b * curl(s);
      }

      // B blocks and the mean-value multiplier
      for (int m = 0; m < np_; ++m) {
        const double chi = tab_p_.values(q, m);
        for (int s = 0; s < 2 * nu_; ++s) {
          local(s, p_begin() + m) -= w * chi * div(s);
          local(p_begin() + m, s) -= w * chi * div(s);
        }
        local(p_begin() + m, lambda()) += w * chi;
        local(lambda(), p_begin() + m) += w * chi;
      }
    }

    for (std::size_t q = 0; q < rhs_rule_.size(); ++q) {
      const double w = rhs_rule_.weights[q] * jac;
      const Eigen::Vector2d f = forcing_(geo.map(rhs_rule_.points[q]));
      for (int i = 0; i < nu_; ++i) {
        const double phi_i = rhs_tab_u_.values(q, i);
        load(2 * i) += w * f.x() * phi_i;
        load(2 * i + 1) += w * f.y() * phi_i;
      }
    }
  }

private:
  int block_of(int i) const
  {
    if (i < w_begin())
      return 0;
    if (i < p_begin())
      return 1;
    if (i < lambda())
      return 2;
    return 3;
  }

  const SpaceSet& spaces_;
  const ProblemCoefficients& coeffs_;
  const Forcing& forcing_;
  QuadratureRule rule_;
  QuadratureRule rhs_rule_;
  BasisTabulation tab_u_, tab_w_, tab_p_, rhs_tab_u_;
  int nu_, nw_, np_;
};

void emit(const CellKernel& kernel, std::size_t cell, const SystemLayout& layout, const Eigen::MatrixXd& local,
          Triplet* out)
{
  const int n = kernel.local_size();
  for (int r = 0; r < n; ++r) {
    const int gr = kernel.global(cell, r, layout);
    for (int c = 0; c < n; ++c)
      if (kernel.structural(r, c))
        *out++ = {gr, kernel.global(cell, c, layout), local(r, c)};
  }
}

BlockSystem finish(const SpaceSet& spaces, const SystemLayout& layout, const CellKernel& kernel,
                   std::vector<Triplet> triplets, const std::vector<Eigen::VectorXd>& loads,
                   const AssemblyOptions& options)
{
  BlockSystem system;
  system.layout = layout;
  system.rhs = Eigen::VectorXd::Zero(layout.size);
  for (std::size_t cell = 0; cell < loads.size(); ++cell)
    for (int i = 0; i < kernel.local_size(); ++i)
      system.rhs(kernel.global(cell, i, layout)) += loads[cell](i);
  system.matrix = SparseMatrix::from_triplets(layout.size, layout.size, std::move(triplets));
  if (options.apply_dirichlet)
    apply_dirichlet(system, dirichlet_dofs(spaces));
  return system;
}

}  // namespace

BlockSystem assemble(const SpaceSet& spaces, const ProblemCoefficients& coeffs, const Forcing& forcing,
                     const AssemblyOptions& options)
{
  check_spaces(spaces, options);
  const auto layout = SystemLayout::of(spaces);
  const CellKernel kernel(spaces, coeffs, forcing, options);
  const auto ncells = static_cast<long>(spaces.mesh().num_cells());
  const auto per_cell = static_cast<std::size_t>(kernel.structural_count());

  std::vector<Triplet> triplets(static_cast<std::size_t>(ncells) * per_cell);
  std::vector<Eigen::VectorXd> loads(static_cast<std::size_t>(ncells));

#pragma omp parallel
  {
    Eigen::MatrixXd local;
#pragma omp for schedule(static)
    for (long cell = 0; cell < ncells; ++cell) {
      const auto c = static_cast<std::size_t>(cell);
      kernel.compute(c, local, loads[c]);
      emit(kernel, c, layout, local, triplets.data() + c * per_cell);
    }
  }
  return finish(spaces, layout, kernel, std::move(triplets), loads, options);
}

BlockSystem assemble_serial(const SpaceSet& spaces, const ProblemCoefficients& coeffs, const Forcing& forcing,
                            const AssemblyOptions& options)
{
  check_spaces(spaces, options);
  const auto layout = SystemLayout::of(spaces);
  const CellKernel kernel(spaces, coeffs, forcing, options);
  const std::size_t ncells = spaces.mesh().num_cells();

  std::vector<Triplet> triplets;
  std::vector<Eigen::VectorXd> loads(ncells);
  Eigen::MatrixXd local;
  for (std::size_t cell = 0; cell < ncells; ++cell) {
    kernel.compute(cell, local, loads[cell]);
    const int n = kernel.local_size();
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (kernel.structural(r, c))
          triplets.push_back({kernel.global(cell, r, layout), kernel.global(cell, c, layout), local(r, c)});
  }
  return finish(spaces, layout, kernel, std::move(triplets), loads, options);
}

std::vector<int> dirichlet_dofs(const SpaceSet& spaces)
{
  // velocity block starts at 0
  return spaces.velocity.boundary_dofs();
}

void apply_dirichlet(BlockSystem& system, const std::vector<int>& dofs)
{
  std::vector<bool> fixed(static_cast<std::size_t>(system.matrix.rows()), false);
  for (int d : dofs)
    fixed[static_cast<std::size_t>(d)] = true;
  // Homogeneous data: eliminated columns contribute nothing to the rhs.
  system.matrix.prune([&](int r, int c, double) { return !fixed[static_cast<std::size_t>(r)] && !fixed[static_cast<std::size_t>(c)]; });

  std::vector<Triplet> triplets;
  triplets.reserve(system.matrix.nonzeros() + dofs.size());
  const auto& off = system.matrix.row_offsets();
  for (int r = 0; r < system.matrix.rows(); ++r)
    for (int k = off[r]; k < off[r + 1]; ++k)
      triplets.push_back({r, system.matrix.col_indices()[k], system.matrix.values()[k]});
  for (int d : dofs) {
    triplets.push_back({d, d, 1.0});
    system.rhs(d) = 0.0;
  }
  system.matrix = SparseMatrix::from_triplets(system.matrix.rows(), system.matrix.cols(), std::move(triplets));
}

namespace {

enum class GramKind { Triple, H1, Mass };

SparseMatrix assemble_gram(const FunctionSpace& space, int quad_degree, GramKind kind)
{
  const auto rule = triangle_rule(quad_degree);
  const auto tab = tabulate(space, rule.points);
  const int nb = space.basis().size();
  const int ncomp = space.components();
  const int nloc = nb * ncomp;
  const auto& mesh = space.mesh();
  const std::size_t ncells = mesh.num_cells();
  const auto per_cell = static_cast<std::size_t>(nloc * nloc);
  std::vector<Triplet> triplets(ncells * per_cell);

#pragma omp parallel for schedule(static)
  for (long cl = 0; cl < static_cast<long>(ncells); ++cl) {
    const auto cell = static_cast<std::size_t>(cl);
    const auto geo = CellGeometry::of(mesh, cell);
    const double jac = std::abs(geo.det);
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nloc, nloc);
    Eigen::MatrixXd grad(2, nb);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * jac;
      for (int i = 0; i < nb; ++i)
        grad.col(i) = geo.inverse_transpose * Eigen::Vector2d(tab.grad_x(q, i), tab.grad_y(q, i));
      for (int i = 0; i < nb; ++i)
        for (int j = 0; j < nb; ++j) {
          const double mass = tab.values(q, i) * tab.values(q, j);
          const double stiff = grad.col(i).dot(grad.col(j));
          for (int c = 0; c < ncomp; ++c)
            for (int d = 0; d < ncomp; ++d) {
              double value = 0.0;
              if (c == d)
                value += mass + (kind == GramKind::H1 ? stiff : 0.0);
              if (kind == GramKind::Triple) {
                // curl(phi e_c) = (c ? d_x : -d_y) phi, div(phi e_c) = d_c phi
                const double curl_i = c ? grad(0, i) : -grad(1, i);
                const double curl_j = d ? grad(0, j) : -grad(1, j);
                value += curl_i * curl_j + grad(c, i) * grad(d, j);
              }
              local(i * ncomp + c, j * ncomp + d) += w * value;
            }
        }
    }
    const auto dofs = space.cell_dofs(cell);
    Triplet* out = triplets.data() + cell * per_cell;
    for (int r = 0; r < nloc; ++r)
      for (int c = 0; c < nloc; ++c)
        *out++ = {dofs[static_cast<std::size_t>(r)], dofs[static_cast<std::size_t>(c)], local(r, c)};
  }
  return SparseMatrix::from_triplets(space.ndof(), space.ndof(), std::move(triplets));
}

}  // namespace

SparseMatrix velocity_triple_gram(const FunctionSpace& velocity, int quad_degree)
{
  return assemble_gram(velocity, quad_degree, GramKind::Triple);
}

SparseMatrix velocity_h1_gram(const FunctionSpace& velocity, int quad_degree)
{
  return assemble_gram(velocity, quad_degree, GramKind::H1);
}

SparseMatrix mass_matrix(const FunctionSpace& space, int quad_degree)
{
  return assemble_gram(space, quad_degree, GramKind::Mass);
}

SparseMatrix sub_block(const SparseMatrix& m, int row_begin, int row_end, int col_begin, int col_end)
{
  std::vector<Triplet> t;
  const auto& off = m.row_offsets();
  for (int r = row_begin; r < row_end; ++r)
    for (int k = off[r]; k < off[r + 1]; ++k) {
      const int c = m.col_indices()[k];
      if (c >= col_begin && c < col_end)
        t.push_back({r - row_begin, c - col_begin, m.values()[k]});
    }
  return SparseMatrix::from_triplets(row_end - row_begin, col_end - col_begin, std::move(t));
}

EnergyForm::EnergyForm(const SpaceSet& spaces, const ProblemCoefficients& coeffs, int quad_degree)
{
  AssemblyOptions options;
  options.quad_degree = quad_degree;
  options.rhs_degree = 1;
  options.apply_dirichlet = false;
  const auto system = assemble(spaces, coeffs, Forcing::zero(), options);
  const int end = system.layout.pressure_offset;
  block_ = sub_block(system.matrix, 0, end, 0, end);
}

double EnergyForm::operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const
{
  if (x.size() != size() || y.size() != size())
    throw std::invalid_argument("EnergyForm: vector length mismatch");
  return x.dot(block_.multiply(y));
}

}  // namespace brinkman
