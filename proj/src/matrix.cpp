#include "rmtlab/matrix.hpp"

#include <stdexcept>
#include <string>

namespace rmtlab {

double relative_asymmetry(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

SymMatrix SymMatrix::from_dense(Eigen::MatrixXd entries) {
  if (entries.rows() != entries.cols()) {
    throw std::invalid_argument("SymMatrix: matrix is " + std::to_string(entries.rows()) + "x" +
                                std::to_string(entries.cols()) + ", expected square");
  }
  if (!entries.allFinite()) throw std::invalid_argument("SymMatrix: non-finite entry");
  const double asym = relative_asymmetry(entries);
  if (asym > 1e-12) {
    throw std::invalid_argument("SymMatrix: input is not symmetric (relative asymmetry " +
                                std::to_string(asym) + ")");
  }
  Eigen::MatrixXd sym = entries;
  for (Eigen::Index i = 0; i < sym.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < sym.cols(); ++j) {
      const double v = 0.5 * (entries(i, j) + entries(j, i));
      sym(i, j) = v;
      sym(j, i) = v;
    }
  }
  return SymMatrix(std::move(sym));
}

SymMatrix SymMatrix::zero(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  return SymMatrix(Eigen::MatrixXd::Zero(m, m));
}

SymMatrix SymMatrix::diagonal(const Eigen::VectorXd& diag) {
  return SymMatrix(Eigen::MatrixXd(diag.asDiagonal()));
}

SymMatrix SymMatrix::minor(std::size_t k) const {
  if (k >= dim()) throw std::out_of_range("SymMatrix::minor: index out of range");
  return SymMatrix(delete_row_col(entries_, static_cast<Eigen::Index>(k)));
}

RectMatrix RectMatrix::without_row(std::size_t k) const {
  if (k >= rows()) throw std::out_of_range("RectMatrix::without_row: index out of range");
  const auto kk = static_cast<Eigen::Index>(k);
  const Eigen::Index p = entries_.rows();
  Eigen::MatrixXd out(p - 1, entries_.cols());
  out.topRows(kk) = entries_.topRows(kk);
  out.bottomRows(p - kk - 1) = entries_.bottomRows(p - kk - 1);
  return RectMatrix(std::move(out));
}

}  // namespace rmtlab
