#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "rmtlab/laws.hpp"
#include "rmtlab/matrix.hpp"
#include "rmtlab/spectra.hpp"

namespace rmtlab {

/// (1/n) sum 1/(lambda_i - z). Throws std::domain_error unless Im z > 0.
cplx empirical_stieltjes(const Esd& esd, ComplexPoint z);

/// The same sum without the half-plane precondition (any z off the real axis).
cplx stieltjes_sum(const Esd& esd, cplx z);

/// (1/n) tr (M - z)^{-1} from a partial-pivoting LU of the complex shifted
/// matrix; eigenvalues are not used.
cplx resolvent_trace(const SymMatrix& m, ComplexPoint z);

struct KdeCurve {
  std::vector<double> grid;
  std::vector<double> values;
  double eta = 0.0;

  /// Trapezoid rule over the grid points inside [lo, hi].
  double trapezoid_mass(double lo, double hi) const;
};

/// Cauchy-kernel smoothing (1/(n pi)) sum eta / ((E - lambda_i)^2 + eta^2).
KdeCurve kde(const Esd& esd, double eta, std::vector<double> grid);

/// lo, lo + step, ... up to hi (inclusive within half a step).
std::vector<double> uniform_grid(double lo, double hi, double step);

using Transform = std::function<cplx(cplx)>;

/// For each eta: (1/pi) int_alpha^beta Im transform(E + i eta) dE by composite
/// Simpson with step <= eta/10. etas must be strictly descending and
/// positive; max_evaluations bounds the total transform calls.
std::vector<double> retrieve_interval_mass(const Transform& transform, double alpha, double beta,
                                           const std::vector<double>& etas,
                                           std::size_t max_evaluations = 50'000'000);

/// 1 / (A(k,k) - r_k A^{(k)-1} c_k), k 0-based. Throws std::domain_error when
/// the minor is numerically singular or the complement vanishes.
cplx schur_diag_entry(const Eigen::MatrixXcd& a, std::size_t k);

struct TraceGap {
  double gap = 0.0;
  double bound = 0.0;  ///< 1 / Im z
};

/// |tr (M - z)^{-1} - tr (M^{(k)} - z)^{-1}| for the 0-based index k.
TraceGap minor_trace_gap(const SymMatrix& m, ComplexPoint z, std::size_t k);

struct OmegaTerm {
  cplx omega, a, b, c, d;
  double r = 0.0;        ///< off-diagonal Frobenius norm of the minor kernel
  double r_prime = 0.0;  ///< diagonal l2 norm of the same kernel
};

struct OmegaReport {
  bool wigner = true;
  ComplexPoint z;
  std::size_t dimension = 0;  ///< n (Wigner) or p (MP)
  double y_n = 0.0;           ///< p / n for MP, 0 for Wigner
  cplx s_n;
  std::vector<OmegaTerm> terms;
  double max_abs_omega = 0.0;
  double reconstruction_residual = 0.0;  ///< |s_n - mean of 1/(denominator + Omega_k)|
  double decomposition_residual = 0.0;   ///< max |Omega - (A+B+C+D)| / max(1, |Omega|)
  double d_bound = 0.0;                  ///< deterministic bound on |D|
  double r_bound = 0.0;                  ///< deterministic bound on R and R'
  bool has_r_terms = true;
};

struct OmegaOptions {
  /// R and R' need the full kernel; skipping them saves a large share of the
  /// work on big matrices.
  bool r_terms = true;
};

/// W is the scaled Wigner matrix; the raw column x_k = sqrt(n) W(., k).
OmegaReport omega_report_wigner(const SymMatrix& w, ComplexPoint z, OmegaOptions options = {});

/// X is the p x n data matrix, V = X X^T / n, y_n = p / n.
OmegaReport omega_report_mp(const RectMatrix& x, ComplexPoint z, OmegaOptions options = {});

}  // namespace rmtlab
