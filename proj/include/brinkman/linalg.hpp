#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace brinkman {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Compressed row storage with sorted, unique column indices per row.
class SparseMatrix {
public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), row_offsets_(static_cast<std::size_t>(rows) + 1, 0) {}

  /// Sorts by (row, col) with a stable sort and sums duplicates in input
  /// order, so the result depends only on the triplet sequence.
  static SparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nonzeros() const { return values_.size(); }

  const std::vector<int>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// Stored value at (row, col), or 0 if the entry is not stored.
  double coeff(int row, int col) const;
  double max_abs() const;

  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd to_dense() const;
  Eigen::SparseMatrix<double, Eigen::RowMajor> to_eigen() const;

  /// Removes entries for which keep(row, col, value) is false.
  template <class Predicate>
  void prune(Predicate keep)
  {
    std::size_t out = 0;
    std::vector<int> offsets(row_offsets_.size(), 0);
    for (int r = 0; r < rows_; ++r) {
      for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
        if (keep(r, col_indices_[k], values_[k])) {
          col_indices_[out] = col_indices_[k];
          values_[out] = values_[k];
          ++out;
        }
      offsets[r + 1] = static_cast<int>(out);
    }
    col_indices_.resize(out);
    values_.resize(out);
    row_offsets_ = std::move(offsets);
  }

  bool operator==(const SparseMatrix&) const = default;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_offsets_{0};
  std::vector<int> col_indices_;
  std::vector<double> values_;
};

class SingularMatrixError : public std::runtime_error {
public:
  SingularMatrixError(const std::string& what, long pivot) : std::runtime_error(what), pivot_(pivot) {}
  /// Pivot index at which factorization broke down, or -1 if unknown.
  long pivot() const { return pivot_; }

private:
  long pivot_;
};

struct SolveReport {
  double residual_norm = 0.0;  // |Ax - b| / |b|, or |Ax| when b = 0
  std::size_t matrix_nnz = 0;
  std::size_t factor_nnz = 0;  // nnz(L) + nnz(U)
  double pivot_growth = 0.0;   // max |U_jj| / max |A_ij| on the equilibrated matrix
};

struct SolveResult {
  Eigen::VectorXd solution;
  SolveReport report;
};

/// Sparse LU with COLAMD ordering and partial pivoting after row/column
/// max-norm equilibration. Throws SingularMatrixError when a zero pivot is
/// met or the solution is not finite, std::invalid_argument on shape errors.
SolveResult lu_solve(const SparseMatrix& matrix, const Eigen::VectorXd& rhs);

}  // namespace brinkman
