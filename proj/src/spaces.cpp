#include "brinkman/spaces.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/LU>

namespace brinkman {

std::string ElementFamily::name() const
{
  std::string base;
  switch (kind) {
  case ElementKind::LagrangeContinuous: base = "P" + std::to_string(degree); break;
  case ElementKind::LagrangeDiscontinuous: base = "P" + std::to_string(degree) + "disc"; break;
  case ElementKind::MiniVelocity: base = "P1+bubble"; break;
  }
  return components == 1 ? base : base + "^" + std::to_string(components);
}

namespace {

void check_family(const ElementFamily& family)
{
  bool ok = family.components == 1 || family.components == 2;
  switch (family.kind) {
  case ElementKind::LagrangeContinuous: ok = ok && (family.degree == 1 || family.degree == 2); break;
  case ElementKind::LagrangeDiscontinuous: ok = ok && (family.degree == 0 || family.degree == 1); break;
  case ElementKind::MiniVelocity: ok = ok && family.degree == 1; break;
  }
  if (!ok)
    throw std::invalid_argument("unsupported element family " + family.name());
}

}  // namespace

ReferenceBasis::ReferenceBasis(const ElementFamily& family) : kind_(family.kind), degree_(family.degree)
{
  check_family(family);
  const Point v0(0, 0), v1(1, 0), v2(0, 1);
  if (kind_ == ElementKind::LagrangeDiscontinuous && degree_ == 0) {
    nodes_ = {Point(1.0 / 3.0, 1.0 / 3.0)};
  } else if (degree_ == 2) {
    nodes_ = {v0, v1, v2, Point(0.5, 0), Point(0.5, 0.5), Point(0, 0.5)};
  } else if (kind_ == ElementKind::MiniVelocity) {
    nodes_ = {v0, v1, v2, Point(1.0 / 3.0, 1.0 / 3.0)};
  } else {
    nodes_ = {v0, v1, v2};
  }
  size_ = static_cast<int>(nodes_.size());
}

void ReferenceBasis::values(const Point& xi, std::span<double> out) const
{
  const double l0 = 1.0 - xi.x() - xi.y(), l1 = xi.x(), l2 = xi.y();
  if (size_ == 1) {
    out[0] = 1.0;
    return;
  }
  if (degree_ == 2) {
    out[0] = l0 * (2.0 * l0 - 1.0);
    out[1] = l1 * (2.0 * l1 - 1.0);
    out[2] = l2 * (2.0 * l2 - 1.0);
    out[3] = 4.0 * l0 * l1;
    out[4] = 4.0 * l1 * l2;
    out[5] = 4.0 * l2 * l0;
    return;
  }
  out[0] = l0;
  out[1] = l1;
  out[2] = l2;
  if (kind_ == ElementKind::MiniVelocity)
    out[3] = 27.0 * l0 * l1 * l2;
}

void ReferenceBasis::gradients(const Point& xi, std::span<double> out) const
{
  const double l0 = 1.0 - xi.x() - xi.y(), l1 = xi.x(), l2 = xi.y();
  // d(l0, l1, l2)/dx = (-1, 1, 0), d/dy = (-1, 0, 1)
  auto set = [&](int i, double gx, double gy) {
    out[static_cast<std::size_t>(2 * i)] = gx;
    out[static_cast<std::size_t>(2 * i + 1)] = gy;
  };
  if (size_ == 1) {
    set(0, 0.0, 0.0);
    return;
  }
  if (degree_ == 2) {
    set(0, -(4.0 * l0 - 1.0), -(4.0 * l0 - 1.0));
    set(1, 4.0 * l1 - 1.0, 0.0);
    set(2, 0.0, 4.0 * l2 - 1.0);
    set(3, 4.0 * (l0 - l1), -4.0 * l1);
    set(4, 4.0 * l2, 4.0 * l1);
    set(5, -4.0 * l2, 4.0 * (l0 - l2));
    return;
  }
  set(0, -1.0, -1.0);
  set(1, 1.0, 0.0);
  set(2, 0.0, 1.0);
  if (kind_ == ElementKind::MiniVelocity)
    set(3, 27.0 * l2 * (l0 - l1), 27.0 * l1 * (l0 - l2));
}

FunctionSpace build_space(std::shared_ptr<const Mesh> mesh, const ElementFamily& family)
{
  if (!mesh)
    throw std::invalid_argument("build_space: null mesh");
  FunctionSpace space(mesh, family);
  const Mesh& m = *mesh;
  const int nloc = space.basis_.size();
  const int ncomp = family.components;
  const auto nv = static_cast<int>(m.num_vertices());
  const auto ncells = m.num_cells();

  // Scalar DOF numbering and locations.
  std::vector<int> scalar_cell_dofs(ncells * static_cast<std::size_t>(nloc));
  std::vector<Point>& coords = space.dof_coords_;
  std::vector<bool>& nodal = space.nodal_;
  const bool continuous = family.kind != ElementKind::LagrangeDiscontinuous;

  if (!continuous) {
    const int per_cell = nloc;
    coords.resize(ncells * static_cast<std::size_t>(per_cell));
    for (std::size_t c = 0; c < ncells; ++c) {
      const auto geo = CellGeometry::of(m, c);
      for (int i = 0; i < nloc; ++i) {
        const auto dof = static_cast<int>(c) * per_cell + i;
        scalar_cell_dofs[c * static_cast<std::size_t>(nloc) + static_cast<std::size_t>(i)] = dof;
        coords[static_cast<std::size_t>(dof)] = geo.map(space.basis_.nodes()[static_cast<std::size_t>(i)]);
      }
    }
    nodal.assign(coords.size(), true);
  } else {
    coords = m.vertices();
    nodal.assign(coords.size(), true);
    if (family.degree == 2 && family.kind == ElementKind::LagrangeContinuous) {
      for (const auto& e : m.edges())
        coords.push_back(0.5 * (m.vertex(e[0]) + m.vertex(e[1])));
      nodal.resize(coords.size(), true);
    } else if (family.kind == ElementKind::MiniVelocity) {
      for (std::size_t c = 0; c < ncells; ++c)
        coords.push_back(m.cell_centroid(c));
      nodal.resize(coords.size(), false);
    }
    for (std::size_t c = 0; c < ncells; ++c) {
      int* dofs = scalar_cell_dofs.data() + c * static_cast<std::size_t>(nloc);
      const auto& cell = m.cells()[c];
      for (int i = 0; i < 3; ++i)
        dofs[i] = cell[static_cast<std::size_t>(i)];
      if (nloc == 6)
        for (int k = 0; k < 3; ++k)
          dofs[3 + k] = nv + m.cell_edges()[c][static_cast<std::size_t>(k)];
      else if (nloc == 4)
        dofs[3] = nv + static_cast<int>(c);
    }
  }

  const auto nscalar = static_cast<int>(coords.size());
  space.ndof_ = nscalar * ncomp;
  space.cell_dofs_.resize(ncells * static_cast<std::size_t>(nloc * ncomp));
  for (std::size_t c = 0; c < ncells; ++c)
    for (int i = 0; i < nloc; ++i)
      for (int comp = 0; comp < ncomp; ++comp)
        space.cell_dofs_[c * static_cast<std::size_t>(nloc * ncomp) + static_cast<std::size_t>(i * ncomp + comp)] =
            scalar_cell_dofs[c * static_cast<std::size_t>(nloc) + static_cast<std::size_t>(i)] * ncomp + comp;

  if (continuous)
    for (int s = 0; s < nscalar; ++s)
      if (on_boundary(coords[static_cast<std::size_t>(s)]))
        for (int comp = 0; comp < ncomp; ++comp)
          space.boundary_dofs_.push_back(s * ncomp + comp);

  return space;
}

BasisTabulation tabulate(const ReferenceBasis& basis, std::span<const Point> ref_points)
{
  const auto np = static_cast<Eigen::Index>(ref_points.size());
  const int n = basis.size();
  BasisTabulation tab{Eigen::MatrixXd(np, n), Eigen::MatrixXd(np, n), Eigen::MatrixXd(np, n)};
  std::vector<double> val(static_cast<std::size_t>(n)), grad(static_cast<std::size_t>(2 * n));
  for (Eigen::Index q = 0; q < np; ++q) {
    basis.values(ref_points[static_cast<std::size_t>(q)], val);
    basis.gradients(ref_points[static_cast<std::size_t>(q)], grad);
    for (int i = 0; i < n; ++i) {
      tab.values(q, i) = val[static_cast<std::size_t>(i)];
      tab.grad_x(q, i) = grad[static_cast<std::size_t>(2 * i)];
      tab.grad_y(q, i) = grad[static_cast<std::size_t>(2 * i + 1)];
    }
  }
  return tab;
}

BasisTabulation tabulate(const FunctionSpace& space, std::span<const Point> ref_points)
{
  return tabulate(space.basis(), ref_points);
}

Eigen::VectorXd interpolate(const FunctionSpace& space, const ScalarFunction& f)
{
  if (space.components() != 1)
    throw std::invalid_argument("interpolate: scalar function on vector space");
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(space.ndof());
  for (int s = 0; s < space.scalar_ndof(); ++s)
    if (space.is_nodal_dof(s))
      coeffs(s) = f(space.dof_coords()[static_cast<std::size_t>(s)]);
  return coeffs;
}

Eigen::VectorXd interpolate(const FunctionSpace& space, const VectorFunction& f)
{
  if (space.components() != 2)
    throw std::invalid_argument("interpolate: vector function on scalar space");
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(space.ndof());
  for (int s = 0; s < space.scalar_ndof(); ++s)
    if (space.is_nodal_dof(s)) {
      const Eigen::Vector2d v = f(space.dof_coords()[static_cast<std::size_t>(s)]);
      coeffs(2 * s) = v.x();
      coeffs(2 * s + 1) = v.y();
    }
  return coeffs;
}

CellGeometry CellGeometry::of(const Mesh& mesh, std::size_t cell)
{
  const auto [a, b, c] = mesh.cell_points(cell);
  CellGeometry g;
  g.origin = a;
  g.jacobian.col(0) = b - a;
  g.jacobian.col(1) = c - a;
  g.det = g.jacobian.determinant();
  g.inverse_transpose = g.jacobian.inverse().transpose();
  return g;
}

}  // namespace brinkman
