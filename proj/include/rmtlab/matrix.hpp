#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace rmtlab {

/// Dense real symmetric matrix. Construction enforces W(i,j) == W(j,i) bit for bit.
class SymMatrix {
 public:
  SymMatrix() = default;

  /// Accepts a square matrix that is symmetric up to 1e-12 relative to its
  /// largest entry and stores the exact symmetrization. Throws
  /// std::invalid_argument otherwise.
  static SymMatrix from_dense(Eigen::MatrixXd entries);

  /// n x n zero matrix.
  static SymMatrix zero(std::size_t n);

  static SymMatrix diagonal(const Eigen::VectorXd& diag);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& dense() const { return entries_; }

  /// Principal minor with row and column `k` deleted.
  SymMatrix minor(std::size_t k) const;

 private:
  explicit SymMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {}
  Eigen::MatrixXd entries_;
};

/// Dense real p x n data matrix.
class RectMatrix {
 public:
  RectMatrix() = default;
  explicit RectMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {}

  std::size_t rows() const { return static_cast<std::size_t>(entries_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(entries_.cols()); }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& dense() const { return entries_; }

  /// Copy with row `k` removed.
  RectMatrix without_row(std::size_t k) const;

 private:
  Eigen::MatrixXd entries_;
};

/// Relative asymmetry max|A - A^T| / max|A| (0 for the zero matrix).
double relative_asymmetry(const Eigen::MatrixXd& a);

/// Matrix with row and column `k` removed; works for real and complex storage.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> delete_row_col(
    const Eigen::MatrixBase<Derived>& a, Eigen::Index k) {
  const Eigen::Index n = a.rows();
  const Eigen::Index m = n - 1;
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(m, m);
  const Eigen::Index tail = n - k - 1;
  out.topLeftCorner(k, k) = a.topLeftCorner(k, k);
  out.topRightCorner(k, tail) = a.topRightCorner(k, tail);
  out.bottomLeftCorner(tail, k) = a.bottomLeftCorner(tail, k);
  out.bottomRightCorner(tail, tail) = a.bottomRightCorner(tail, tail);
  return out;
}

}  // namespace rmtlab
