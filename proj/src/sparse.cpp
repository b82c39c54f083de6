#include "sfwg/sparse.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sfwg {

CsrMatrix::CsrMatrix(std::size_t dim, std::vector<std::size_t> row_offsets, std::vector<std::size_t> columns,
                     std::vector<double> values)
    : dim_(dim), row_offsets_(std::move(row_offsets)), columns_(std::move(columns)), values_(std::move(values)) {
  if (row_offsets_.size() != dim_ + 1 || row_offsets_.front() != 0 || row_offsets_.back() != columns_.size() ||
      columns_.size() != values_.size()) {
    throw std::invalid_argument("CsrMatrix: inconsistent arrays");
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      if (columns_[k] >= dim_) throw std::invalid_argument("CsrMatrix: column out of range");
      if (k > row_offsets_[i] && columns_[k] <= columns_[k - 1]) {
        throw std::invalid_argument("CsrMatrix: columns must be strictly increasing");
      }
    }
  }
}

CsrMatrix CsrMatrix::from_triplets(std::size_t dim, const std::vector<Triplet>& triplets) {
  // Bucket by row keeping input order, then stable sort each row by column.
  std::vector<std::size_t> count(dim + 1, 0);
  for (const auto& t : triplets) {
    if (t.row >= dim || t.col >= dim) throw std::invalid_argument("from_triplets: index out of range");
    ++count[t.row + 1];
  }
  std::partial_sum(count.begin(), count.end(), count.begin());
  std::vector<std::size_t> order(triplets.size());
  {
    std::vector<std::size_t> next(count.begin(), count.end() - 1);
    for (std::size_t k = 0; k < triplets.size(); ++k) order[next[triplets[k].row]++] = k;
  }

  std::vector<std::size_t> offsets(dim + 1, 0);
  std::vector<std::size_t> columns;
  std::vector<double> values;
  columns.reserve(triplets.size());
  values.reserve(triplets.size());
  for (std::size_t i = 0; i < dim; ++i) {
    auto first = order.begin() + static_cast<std::ptrdiff_t>(count[i]);
    auto last = order.begin() + static_cast<std::ptrdiff_t>(count[i + 1]);
    std::stable_sort(first, last, [&](std::size_t a, std::size_t b) { return triplets[a].col < triplets[b].col; });
    for (auto it = first; it != last; ++it) {
      const auto& t = triplets[*it];
      if (columns.size() > offsets[i] && columns.back() == t.col) {
        values.back() += t.value;
      } else {
        columns.push_back(t.col);
        values.push_back(t.value);
      }
    }
    offsets[i + 1] = columns.size();
  }
  return CsrMatrix(dim, std::move(offsets), std::move(columns), std::move(values));
}

CsrMatrix CsrMatrix::identity(std::size_t dim) {
  std::vector<std::size_t> offsets(dim + 1);
  std::vector<std::size_t> columns(dim);
  std::iota(offsets.begin(), offsets.end(), std::size_t{0});
  std::iota(columns.begin(), columns.end(), std::size_t{0});
  return CsrMatrix(dim, std::move(offsets), std::move(columns), std::vector<double>(dim, 1.0));
}

double CsrMatrix::coeff(std::size_t row, std::size_t col) const {
  const auto first = columns_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row]);
  const auto last = columns_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[row + 1]);
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return 0.0;
  return values_[static_cast<std::size_t>(it - columns_.begin())];
}

Eigen::VectorXd CsrMatrix::diagonal() const {
  Eigen::VectorXd d(static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < dim_; ++i) d(static_cast<Eigen::Index>(i)) = coeff(i, i);
  return d;
}

double CsrMatrix::asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      worst = std::max(worst, std::abs(values_[k] - coeff(columns_[k], i)));
    }
  }
  return worst;
}

CsrMatrix CsrMatrix::submatrix(const std::vector<std::size_t>& keep) const {
  constexpr auto dropped = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> renumber(dim_, dropped);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] >= dim_ || (k > 0 && keep[k] <= keep[k - 1])) {
      throw std::invalid_argument("submatrix: indices must be sorted, unique and in range");
    }
    renumber[keep[k]] = k;
  }
  std::vector<std::size_t> offsets(keep.size() + 1, 0);
  std::vector<std::size_t> columns;
  std::vector<double> values;
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const std::size_t i = keep[r];
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const std::size_t c = renumber[columns_[k]];
      if (c == dropped) continue;
      columns.push_back(c);
      values.push_back(values_[k]);
    }
    offsets[r + 1] = columns.size();
  }
  return CsrMatrix(keep.size(), std::move(offsets), std::move(columns), std::move(values));
}

Eigen::VectorXd matvec(const CsrMatrix& a, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != a.size()) {
    throw std::invalid_argument("matvec: dimension mismatch");
  }
  const auto& offsets = a.row_offsets();
  const auto& columns = a.columns();
  const auto& values = a.values();
  Eigen::VectorXd y(x.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double sum = 0.0;
    for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k) {
      sum += values[k] * x(static_cast<Eigen::Index>(columns[k]));
    }
    y(static_cast<Eigen::Index>(i)) = sum;
  }
  return y;
}

Eigen::MatrixXd to_dense(const CsrMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = a.row_offsets()[i]; k < a.row_offsets()[i + 1]; ++k) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a.columns()[k])) = a.values()[k];
    }
  }
  return d;
}

CgResult cg_solve(const CsrMatrix& a, const Eigen::VectorXd& b, const CgOptions& options) {
  if (static_cast<std::size_t>(b.size()) != a.size()) {
    throw std::invalid_argument("cg_solve: dimension mismatch");
  }
  const std::size_t max_iter = options.max_iterations > 0 ? options.max_iterations : 10 * a.size();

  CgResult result;
  result.x = Eigen::VectorXd::Zero(b.size());
  const double b_norm = b.norm();
  if (b_norm == 0.0) {
    result.converged = true;
    return result;
  }

  Eigen::VectorXd inv_diag = Eigen::VectorXd::Ones(b.size());
  if (options.jacobi) {
    inv_diag = a.diagonal();
    for (Eigen::Index i = 0; i < inv_diag.size(); ++i) {
      if (!(inv_diag(i) > 0.0)) throw std::invalid_argument("cg_solve: Jacobi needs a positive diagonal");
      inv_diag(i) = 1.0 / inv_diag(i);
    }
  }

  Eigen::VectorXd r = b;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  result.relative_residual = 1.0;

  while (result.iterations < max_iter) {
    const Eigen::VectorXd ap = matvec(a, p);
    const double pap = p.dot(ap);
    if (!(pap > 0.0)) break;  // A not positive definite along p
    const double alpha = rz / pap;
    result.x += alpha * p;
    r -= alpha * ap;
    ++result.iterations;
    result.relative_residual = r.norm() / b_norm;
    if (options.monitor) options.monitor(result.iterations, result.x);
    if (result.relative_residual <= options.tolerance) {
      result.converged = true;
      break;
    }
    z = inv_diag.cwiseProduct(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  return result;
}

Eigen::VectorXd dense_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw std::invalid_argument("dense_solve: dimension mismatch");
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  // PartialPivLU does not report singularity; reject on the pivots.
  const auto& diag = lu.matrixLU().diagonal();
  const double scale = a.cwiseAbs().maxCoeff();
  const double eps = std::numeric_limits<double>::epsilon() * static_cast<double>(a.rows()) * scale;
  if (a.rows() > 0 && (scale == 0.0 || diag.cwiseAbs().minCoeff() <= eps)) {
    throw SingularMatrixError("dense_solve: matrix is singular to working precision");
  }
  return lu.solve(b);
}

}  // namespace sfwg
