#pragma once

#include <span>
#include <vector>

#include "rmtlab/laws.hpp"
#include "rmtlab/matrix.hpp"

namespace rmtlab {

/// Empirical spectral distribution: n sorted atoms of weight 1/n each.
class Esd {
 public:
  /// Sorts the values. Throws std::invalid_argument when empty or non-finite.
  explicit Esd(std::vector<double> eigenvalues);

  std::span<const double> eigenvalues() const { return eigenvalues_; }
  std::size_t size() const { return eigenvalues_.size(); }
  double weight() const { return 1.0 / static_cast<double>(eigenvalues_.size()); }

 private:
  std::vector<double> eigenvalues_;
};

/// All eigenvalues in ascending order (dense symmetric solver).
std::vector<double> eigenvalues_sym(const SymMatrix& m);

/// Checks symmetry to 1e-12 relative first; throws std::invalid_argument.
std::vector<double> eigenvalues_sym(const Eigen::MatrixXd& m);

Esd esd_of(const SymMatrix& m);

/// (1/n) sum_i lambda_i^k, k >= 1.
double esd_moment(const Esd& esd, unsigned k);

/// (1/n) tr(M^k) through repeated multiplication, k >= 1.
double trace_moment(const SymMatrix& m, unsigned k);

/// sup_x |F_esd(x) - F_law(x)|, checked on both sides of every atom.
double kolmogorov_distance(const Esd& esd, const LimitLaw& law);

/// Two-sample version between ESDs.
double kolmogorov_distance(const Esd& a, const Esd& b);

struct HoffmanWielandt {
  double lhs = 0.0;  ///< sum_i (lambda_i^X - lambda_i^Y)^2 with both spectra sorted
  double rhs = 0.0;  ///< tr (X - Y)^2
  bool holds() const { return lhs <= rhs + 1e-8 * (1.0 + rhs); }
};

/// Throws std::invalid_argument on dimension mismatch.
HoffmanWielandt hoffman_wielandt_check(const SymMatrix& x, const SymMatrix& y);

}  // namespace rmtlab
