#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace sfwg {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Square matrix in compressed sparse row form. Column indices are strictly
/// increasing within each row.
class CsrMatrix {
public:
  CsrMatrix() = default;
  CsrMatrix(std::size_t dim, std::vector<std::size_t> row_offsets, std::vector<std::size_t> columns,
            std::vector<double> values);

  /// Sums duplicate entries. The result does not depend on triplet order
  /// beyond floating-point summation order, which follows the input order.
  static CsrMatrix from_triplets(std::size_t dim, const std::vector<Triplet>& triplets);
  static CsrMatrix identity(std::size_t dim);

  [[nodiscard]] std::size_t size() const { return dim_; }
  [[nodiscard]] std::size_t nonzeros() const { return values_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
  [[nodiscard]] const std::vector<std::size_t>& columns() const { return columns_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }

  /// Stored value or 0.
  [[nodiscard]] double coeff(std::size_t row, std::size_t col) const;
  [[nodiscard]] Eigen::VectorXd diagonal() const;
  /// max |a_ij - a_ji| over the stored pattern.
  [[nodiscard]] double asymmetry() const;

  /// Rows and columns listed in `keep` (sorted), renumbered 0..keep.size()-1.
  [[nodiscard]] CsrMatrix submatrix(const std::vector<std::size_t>& keep) const;

private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> columns_;
  std::vector<double> values_;
};

/// y = A x. Throws std::invalid_argument on dimension mismatch.
Eigen::VectorXd matvec(const CsrMatrix& a, const Eigen::VectorXd& x);

Eigen::MatrixXd to_dense(const CsrMatrix& a);

struct CgOptions {
  double tolerance = 1e-10;         ///< on ||b - A x|| / ||b||
  std::size_t max_iterations = 0;   ///< 0 means 10 * dim
  bool jacobi = true;
  /// Called after every iteration with the iteration count and current iterate.
  std::function<void(std::size_t, const Eigen::VectorXd&)> monitor;
};

struct CgResult {
  Eigen::VectorXd x;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients for symmetric positive
/// definite A, starting from zero. Never throws on non-convergence;
/// inspect `converged`.
CgResult cg_solve(const CsrMatrix& a, const Eigen::VectorXd& b, const CgOptions& options = {});

class SingularMatrixError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// LU with partial pivoting. Throws SingularMatrixError when A is singular
/// to working precision.
Eigen::VectorXd dense_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

}  // namespace sfwg
