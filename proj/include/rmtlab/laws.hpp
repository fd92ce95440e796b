#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rmtlab/counting.hpp"

namespace rmtlab {

using cplx = std::complex<double>;

/// Resolvent spectral parameter z = E + i eta.
struct ComplexPoint {
  double re = 0.0;
  double im = 1.0;

  cplx value() const { return {re, im}; }

  /// Throws std::domain_error unless im > 0.
  static ComplexPoint upper(double re, double im);
  void require_upper(const char* where) const;
};

enum class LawKind { Semicircle, MarchenkoPastur };

/// The two limit laws. For MP the ratio y is p/n in the limit.
class LimitLaw {
 public:
  static LimitLaw semicircle() { return LimitLaw(LawKind::Semicircle, 0.0); }
  /// Throws std::invalid_argument unless y > 0 and finite.
  static LimitLaw marchenko_pastur(double y);

  LawKind kind() const { return kind_; }
  double ratio() const { return y_; }

  /// Edges of the continuous part: [-2, 2] or [(1 - sqrt y)^2, (1 + sqrt y)^2].
  double lower_edge() const;
  double upper_edge() const;

  std::string name() const;

  bool operator==(const LimitLaw&) const = default;

 private:
  LimitLaw(LawKind kind, double y) : kind_(kind), y_(y) {}
  LawKind kind_;
  double y_;
};

/// Continuous part only; the MP atom at 0 is reported by atom_mass().
double density(const LimitLaw& law, double x);

/// 1 - 1/y for MP with y > 1, else 0.
double atom_mass(const LimitLaw& law);

/// Closed-form k-th moment (exact integer combinatorics, converted last).
double law_moment(const LimitLaw& law, unsigned k);

/// Square root with non-negative imaginary part; on the real axis the root
/// with non-negative real part.
cplx principal_sqrt_upper(cplx w);

/// Closed-form Stieltjes transform S(z) = int 1/(x - z) dmu(x), Im z > 0.
cplx law_stieltjes(const LimitLaw& law, ComplexPoint z);

/// The other root m_- of the self-consistent quadratic.
cplx rejected_branch(const LimitLaw& law, ComplexPoint z);

/// -z - m for the semicircle, 1 - z - y - y z m for MP.
cplx sce_denominator(const LimitLaw& law, cplx m, ComplexPoint z);

/// m - 1/denominator. Throws std::domain_error when |denominator| < 1e-14.
cplx sce_residual(const LimitLaw& law, cplx m, ComplexPoint z);

/// Right-continuous CDF including the MP atom at x >= 0.
double cdf(const LimitLaw& law, double x);

/// lim_{t -> x-} F(t).
double cdf_left(const LimitLaw& law, double x);

/// int f dmu, atom included. The continuous part is integrated in the angle
/// variable x = a + (b - a)(1 - cos t)/2, which removes the square-root edge
/// behavior of both densities. `breakpoints` are points where f has kinks.
double expectation(const LimitLaw& law, const std::function<double(double)>& f,
                   std::span<const double> breakpoints = {});

/// Same machinery for complex-valued integrands.
cplx expectation_complex(const LimitLaw& law, const std::function<cplx(double)>& f,
                         std::span<const double> breakpoints = {});

struct MomentSequence {
  std::vector<double> m;  ///< m[0] = 1

  /// Throws std::invalid_argument when empty or m[0] != 1.
  explicit MomentSequence(std::vector<double> values);
};

/// m_0, ..., m_{count-1} from law_moment.
MomentSequence law_moments(const LimitLaw& law, unsigned count);

struct HankelCheck {
  bool ok = false;
  double min_eigenvalue = 0.0;
  Eigen::MatrixXd hankel;
};

/// H(i,j) = m[i+j], 0 <= i,j <= N; ok iff min eig >= -1e-9 (1 + ||H||_2).
/// Throws std::invalid_argument when fewer than 2N+1 moments are given.
HankelCheck hankel_psd_check(const MomentSequence& moments, unsigned N);

}  // namespace rmtlab
