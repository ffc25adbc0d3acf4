#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "brinkman/linalg.hpp"
#include "brinkman/model.hpp"
#include "brinkman/spaces.hpp"

namespace brinkman {

/// Velocity H_h, vorticity Z_h and pressure Q_h spaces on one mesh.
struct SpaceSet {
  FunctionSpace velocity;
  FunctionSpace vorticity;
  FunctionSpace pressure;

  /// Continuous P2 velocity, P1 vorticity (discontinuous unless asked
  /// otherwise), continuous P1 pressure.
  static SpaceSet taylor_hood(std::shared_ptr<const Mesh> mesh, bool continuous_vorticity = false);
  /// P1 + cubic bubble velocity, P0 vorticity, continuous P1 pressure.
  static SpaceSet mini(std::shared_ptr<const Mesh> mesh);

  const Mesh& mesh() const { return velocity.mesh(); }
};

/// Block offsets of the global system [u | omega | p | lambda].
struct SystemLayout {
  int velocity_offset = 0;
  int vorticity_offset = 0;
  int pressure_offset = 0;
  int multiplier = 0;
  int size = 0;

  int num_velocity() const { return vorticity_offset - velocity_offset; }
  int num_vorticity() const { return pressure_offset - vorticity_offset; }
  int num_pressure() const { return multiplier - pressure_offset; }

  static SystemLayout of(const SpaceSet& spaces);
};

struct BlockSystem {
  SystemLayout layout;
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
};

struct AssemblyOptions {
  int quad_degree = 6;   // bilinear forms
  int rhs_degree = 10;   // load vector
  bool apply_dirichlet = true;
};

/// Assemble the augmented saddle-point system
///
///   A((u,w),(v,t)) + B((v,t),p) + lambda (p,1) = (f, v)
///   B((u,w),q)                  + mu (p,1)     = 0
///
/// with the mean-value multiplier in the last row and column and
/// homogeneous Dirichlet velocity DOFs eliminated symmetrically.
/// The cell loop runs under OpenMP; the result is bit-identical to
/// assemble_serial for any thread count.
///
/// Throws std::invalid_argument if the spaces live on different meshes or the
/// quadrature cannot integrate the constant-coefficient terms exactly.
BlockSystem assemble(const SpaceSet& spaces, const ProblemCoefficients& coeffs, const Forcing& forcing,
                     const AssemblyOptions& options = {});

/// Single-threaded reference path of assemble.
BlockSystem assemble_serial(const SpaceSet& spaces, const ProblemCoefficients& coeffs, const Forcing& forcing,
                            const AssemblyOptions& options = {});

/// Zero the rows and columns of `dofs`, put 1 on their diagonal and 0 in the
/// right-hand side.
void apply_dirichlet(BlockSystem& system, const std::vector<int>& dofs);

/// Global indices of all Dirichlet-constrained velocity DOFs.
std::vector<int> dirichlet_dofs(const SpaceSet& spaces);

/// Assembled Gram matrices used for norms.
SparseMatrix velocity_triple_gram(const FunctionSpace& velocity, int quad_degree);  // (u,v) + (curl u, curl v) + (div u, div v)
SparseMatrix velocity_h1_gram(const FunctionSpace& velocity, int quad_degree);      // (u,v) + (grad u, grad v)
SparseMatrix mass_matrix(const FunctionSpace& space, int quad_degree);

/// |||v|||^2 = |v|^2 + |curl v|^2 + |div v|^2 of a discrete velocity.
class TripleNorm {
public:
  TripleNorm(const FunctionSpace& velocity, int quad_degree) : gram_(velocity_triple_gram(velocity, quad_degree)) {}
  double operator()(const Eigen::VectorXd& v) const { return std::sqrt(std::max(0.0, v.dot(gram_.multiply(v)))); }
  const SparseMatrix& gram() const { return gram_; }

private:
  SparseMatrix gram_;
};

/// A((v,t),(w,s)) on the velocity-vorticity block, evaluated through the
/// assembled matrix. Coefficient vectors are [velocity | vorticity].
class EnergyForm {
public:
  EnergyForm(const SpaceSet& spaces, const ProblemCoefficients& coeffs, int quad_degree);

  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  const SparseMatrix& block() const { return block_; }
  int size() const { return block_.rows(); }

private:
  SparseMatrix block_;
};

/// Principal (rows, cols) sub-block [begin, end) x [begin, end) of a matrix.
SparseMatrix sub_block(const SparseMatrix& m, int row_begin, int row_end, int col_begin, int col_end);

}  // namespace brinkman
