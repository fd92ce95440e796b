#include "rmtlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmtlab {

Esd::Esd(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
  if (eigenvalues_.empty()) throw std::invalid_argument("Esd: no eigenvalues");
  for (double v : eigenvalues_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Esd: non-finite eigenvalue");
  }
  std::sort(eigenvalues_.begin(), eigenvalues_.end());
}

std::vector<double> eigenvalues_sym(const SymMatrix& m) {
  if (m.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.dense(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalues_sym: eigensolver did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> eigenvalues_sym(const Eigen::MatrixXd& m) {
  return eigenvalues_sym(SymMatrix::from_dense(m));
}

Esd esd_of(const SymMatrix& m) { return Esd(eigenvalues_sym(m)); }

double esd_moment(const Esd& esd, unsigned k) {
  if (k == 0) throw std::invalid_argument("esd_moment: k must be positive");
  double sum = 0.0;
  for (double v : esd.eigenvalues()) sum += std::pow(v, static_cast<int>(k));
  return sum * esd.weight();
}

double trace_moment(const SymMatrix& m, unsigned k) {
  if (k == 0) throw std::invalid_argument("trace_moment: k must be positive");
  if (m.dim() == 0) throw std::invalid_argument("trace_moment: empty matrix");
  Eigen::MatrixXd power = m.dense();
  for (unsigned i = 1; i < k; ++i) power = power * m.dense();
  return power.trace() / static_cast<double>(m.dim());
}

double kolmogorov_distance(const Esd& esd, const LimitLaw& law) {
  const auto ev = esd.eigenvalues();
  const double n = static_cast<double>(ev.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < ev.size()) {
    std::size_t j = i;
    while (j < ev.size() && ev[j] == ev[i]) ++j;
    const double x = ev[i];
    const double below = static_cast<double>(i) / n;
    const double upto = static_cast<double>(j) / n;
    worst = std::max(worst, std::abs(below - cdf_left(law, x)));
    worst = std::max(worst, std::abs(upto - cdf(law, x)));
    i = j;
  }
  return worst;
}

double kolmogorov_distance(const Esd& a, const Esd& b) {
  const auto ea = a.eigenvalues();
  const auto eb = b.eigenvalues();
  std::vector<double> points(ea.begin(), ea.end());
  points.insert(points.end(), eb.begin(), eb.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  auto cdf_at = [](std::span<const double> ev, double x, bool left) {
    const auto it = left ? std::lower_bound(ev.begin(), ev.end(), x)
                         : std::upper_bound(ev.begin(), ev.end(), x);
    return static_cast<double>(it - ev.begin()) / static_cast<double>(ev.size());
  };
  double worst = 0.0;
  for (double x : points) {
    worst = std::max(worst, std::abs(cdf_at(ea, x, true) - cdf_at(eb, x, true)));
    worst = std::max(worst, std::abs(cdf_at(ea, x, false) - cdf_at(eb, x, false)));
  }
  return worst;
}

HoffmanWielandt hoffman_wielandt_check(const SymMatrix& x, const SymMatrix& y) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("hoffman_wielandt_check: dimension mismatch");
  }
  const auto ex = eigenvalues_sym(x);
  const auto ey = eigenvalues_sym(y);
  HoffmanWielandt out;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    const double d = ex[i] - ey[i];
    out.lhs += d * d;
  }
  // tr (X - Y)^2 = squared Frobenius norm of the symmetric difference
  out.rhs = (x.dense() - y.dense()).squaredNorm();
  return out;
}

}  // namespace rmtlab
