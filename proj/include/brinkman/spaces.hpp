#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "brinkman/mesh.hpp"

namespace brinkman {

enum class ElementKind {
  LagrangeContinuous,     // degree 1 or 2
  LagrangeDiscontinuous,  // degree 0 or 1
  MiniVelocity,           // P1 + cubic bubble 27*l1*l2*l3
};

struct ElementFamily {
  ElementKind kind = ElementKind::LagrangeContinuous;
  int degree = 1;
  int components = 1;

  static ElementFamily continuous(int degree, int components = 1) { return {ElementKind::LagrangeContinuous, degree, components}; }
  static ElementFamily discontinuous(int degree, int components = 1) { return {ElementKind::LagrangeDiscontinuous, degree, components}; }
  static ElementFamily mini(int components = 2) { return {ElementKind::MiniVelocity, 1, components}; }

  std::string name() const;
  bool operator==(const ElementFamily&) const = default;
};

/// Scalar reference basis on the reference triangle (0,0), (1,0), (0,1).
///
/// Local ordering: vertex functions first (local vertex 0, 1, 2), then
/// P2 edge functions for local edges (0,1), (1,2), (2,0), or the MINI
/// bubble. P0 has a single constant function.
class ReferenceBasis {
public:
  explicit ReferenceBasis(const ElementFamily& family);

  int size() const { return size_; }
  const std::vector<Point>& nodes() const { return nodes_; }

  void values(const Point& xi, std::span<double> out) const;
  /// Reference gradients; out has 2*size() entries laid out (dx0, dy0, dx1, dy1, ...).
  void gradients(const Point& xi, std::span<double> out) const;

private:
  ElementKind kind_;
  int degree_;
  int size_;
  std::vector<Point> nodes_;
};

/// Values and reference gradients of every local basis function at a set of
/// reference points: values(q, i), grad_x(q, i), grad_y(q, i).
struct BasisTabulation {
  Eigen::MatrixXd values;
  Eigen::MatrixXd grad_x;
  Eigen::MatrixXd grad_y;
};

/// Global degree-of-freedom map of a finite element space on a mesh.
///
/// For vector families the scalar DOF s owns global DOFs 2s (x) and 2s+1 (y),
/// and cell_dofs lists them interleaved per local scalar function.
class FunctionSpace {
public:
  const ElementFamily& family() const { return family_; }
  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  const ReferenceBasis& basis() const { return basis_; }

  int ndof() const { return ndof_; }
  int scalar_ndof() const { return ndof_ / family_.components; }
  int components() const { return family_.components; }
  /// Local DOF count per cell, components included.
  int local_size() const { return basis_.size() * family_.components; }

  std::span<const int> cell_dofs(std::size_t cell) const
  {
    const auto n = static_cast<std::size_t>(local_size());
    return {cell_dofs_.data() + cell * n, n};
  }
  /// Location of each scalar DOF.
  const std::vector<Point>& dof_coords() const { return dof_coords_; }
  /// Sorted global DOFs located on the boundary; empty for discontinuous spaces.
  const std::vector<int>& boundary_dofs() const { return boundary_dofs_; }
  bool is_nodal_dof(int scalar_dof) const { return nodal_[static_cast<std::size_t>(scalar_dof)]; }

private:
  friend FunctionSpace build_space(std::shared_ptr<const Mesh> mesh, const ElementFamily& family);
  FunctionSpace(std::shared_ptr<const Mesh> mesh, const ElementFamily& family)
      : family_(family), mesh_(std::move(mesh)), basis_(family) {}

  ElementFamily family_;
  std::shared_ptr<const Mesh> mesh_;
  ReferenceBasis basis_;
  int ndof_ = 0;
  std::vector<int> cell_dofs_;
  std::vector<Point> dof_coords_;
  std::vector<int> boundary_dofs_;
  std::vector<bool> nodal_;
};

/// Throws std::invalid_argument for unsupported family/degree combinations.
FunctionSpace build_space(std::shared_ptr<const Mesh> mesh, const ElementFamily& family);

/// Tabulate the scalar reference basis of `space` at reference points.
BasisTabulation tabulate(const FunctionSpace& space, std::span<const Point> ref_points);
BasisTabulation tabulate(const ReferenceBasis& basis, std::span<const Point> ref_points);

using ScalarFunction = std::function<double(const Point&)>;
using VectorFunction = std::function<Eigen::Vector2d(const Point&)>;

/// Nodal interpolation. Bubble coefficients are zero.
Eigen::VectorXd interpolate(const FunctionSpace& space, const ScalarFunction& f);
Eigen::VectorXd interpolate(const FunctionSpace& space, const VectorFunction& f);

/// Affine map of a cell: x = origin + jacobian * xi.
struct CellGeometry {
  Point origin;
  Eigen::Matrix2d jacobian;
  Eigen::Matrix2d inverse_transpose;
  double det = 0.0;

  static CellGeometry of(const Mesh& mesh, std::size_t cell);
  Point map(const Point& xi) const { return origin + jacobian * xi; }
};

}  // namespace brinkman
