#include "brinkman/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>

namespace brinkman {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Triplet> triplets)
{
  for (const auto& t : triplets)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::out_of_range("triplet index out of range");
  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });

  SparseMatrix m(rows, cols);
  m.col_indices_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  int last_row = -1, last_col = -1;
  for (const auto& t : triplets) {
    if (t.row == last_row && t.col == last_col) {
      m.values_.back() += t.value;
      continue;
    }
    m.col_indices_.push_back(t.col);
    m.values_.push_back(t.value);
    ++m.row_offsets_[t.row + 1];
    last_row = t.row;
    last_col = t.col;
  }
  for (int r = 0; r < rows; ++r)
    m.row_offsets_[r + 1] += m.row_offsets_[r];
  return m;
}

double SparseMatrix::coeff(int row, int col) const
{
  const auto begin = col_indices_.begin() + row_offsets_[row];
  const auto end = col_indices_.begin() + row_offsets_[row + 1];
  const auto it = std::lower_bound(begin, end, col);
  return (it != end && *it == col) ? values_[static_cast<std::size_t>(it - col_indices_.begin())] : 0.0;
}

double SparseMatrix::max_abs() const
{
  double m = 0.0;
  for (double v : values_)
    m = std::max(m, std::abs(v));
  return m;
}

Eigen::VectorXd SparseMatrix::multiply(const Eigen::VectorXd& x) const
{
  if (x.size() != cols_)
    throw std::invalid_argument("multiply: dimension mismatch");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(rows_);
  for (int r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
      sum += values_[k] * x(col_indices_[k]);
    y(r) = sum;
  }
  return y;
}

Eigen::MatrixXd SparseMatrix::to_dense() const
{
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
      d(r, col_indices_[k]) = values_[k];
  return d;
}

Eigen::SparseMatrix<double, Eigen::RowMajor> SparseMatrix::to_eigen() const
{
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(values_.size());
  for (int r = 0; r < rows_; ++r)
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
      t.emplace_back(r, col_indices_[k], values_[k]);
  Eigen::SparseMatrix<double, Eigen::RowMajor> m(rows_, cols_);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

namespace {

// Exposes the supernodal factor storage to read the U diagonal.
class InspectableSparseLU : public Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> {
public:
  double max_abs_pivot() const
  {
    double m = 0.0;
    for (Eigen::Index j = 0; j < this->cols(); ++j)
      for (SCMatrix::InnerIterator it(m_Lstore, j); it; ++it)
        if (it.index() == j) {
          m = std::max(m, std::abs(it.value()));
          break;
        }
    return m;
  }
};

long parse_pivot(const std::string& message)
{
  std::smatch match;
  if (std::regex_search(message, match, std::regex("([0-9]+)\\s*$")))
    return std::stol(match[1]);
  return -1;
}

}  // namespace

SolveResult lu_solve(const SparseMatrix& matrix, const Eigen::VectorXd& rhs)
{
  const int n = matrix.rows();
  if (matrix.cols() != n)
    throw std::invalid_argument("lu_solve: matrix is not square");
  if (rhs.size() != n)
    throw std::invalid_argument("lu_solve: rhs length mismatch");

  // One pass of row then column max-norm scaling: D_r A D_c.
  Eigen::VectorXd row_scale = Eigen::VectorXd::Ones(n), col_scale = Eigen::VectorXd::Ones(n);
  const auto& off = matrix.row_offsets();
  const auto& idx = matrix.col_indices();
  const auto& val = matrix.values();
  for (int r = 0; r < n; ++r) {
    double m = 0.0;
    for (int k = off[r]; k < off[r + 1]; ++k)
      m = std::max(m, std::abs(val[k]));
    if (m > 0.0)
      row_scale(r) = 1.0 / m;
  }
  Eigen::VectorXd col_max = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < n; ++r)
    for (int k = off[r]; k < off[r + 1]; ++k)
      col_max(idx[k]) = std::max(col_max(idx[k]), std::abs(val[k] * row_scale(r)));
  for (int c = 0; c < n; ++c)
    if (col_max(c) > 0.0)
      col_scale(c) = 1.0 / col_max(c);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(val.size());
  for (int r = 0; r < n; ++r)
    for (int k = off[r]; k < off[r + 1]; ++k)
      triplets.emplace_back(r, idx[k], row_scale(r) * val[k] * col_scale(idx[k]));
  Eigen::SparseMatrix<double> scaled(n, n);
  scaled.setFromTriplets(triplets.begin(), triplets.end());
  scaled.makeCompressed();

  InspectableSparseLU lu;
  lu.analyzePattern(scaled);
  lu.factorize(scaled);
  if (lu.info() != Eigen::Success) {
    const auto message = lu.lastErrorMessage();
    const long pivot = parse_pivot(message);
    throw SingularMatrixError("lu_solve: singular matrix (" + message + "), pivot " + std::to_string(pivot), pivot);
  }

  const Eigen::VectorXd scaled_rhs = row_scale.cwiseProduct(rhs);
  Eigen::VectorXd y = lu.solve(scaled_rhs);
  SolveResult result;
  result.solution = col_scale.cwiseProduct(y);
  if (!result.solution.allFinite())
    throw SingularMatrixError("lu_solve: non-finite solution, matrix numerically singular", -1);

  const double bnorm = rhs.norm();
  const double rnorm = (matrix.multiply(result.solution) - rhs).norm();
  result.report.residual_norm = bnorm > 0.0 ? rnorm / bnorm : rnorm;
  result.report.matrix_nnz = matrix.nonzeros();
  result.report.factor_nnz = static_cast<std::size_t>(lu.nnzL() + lu.nnzU());
  double amax = 0.0;
  for (int k = 0; k < scaled.nonZeros(); ++k)
    amax = std::max(amax, std::abs(scaled.valuePtr()[k]));
  result.report.pivot_growth = amax > 0.0 ? lu.max_abs_pivot() / amax : 0.0;
  return result;
}

}  // namespace brinkman
