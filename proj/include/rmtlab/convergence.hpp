#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rmtlab/ensemble.hpp"
#include "rmtlab/laws.hpp"
#include "rmtlab/spectra.hpp"
#include "rmtlab/stieltjes.hpp"

namespace rmtlab {

/// phi_l^u: 1 on |x| <= l, linear down to 0 at |x| = u. Requires u > l >= 0.
double cutoff_eval(double lower, double upper, double x);

/// x -> (sum_j coeffs[j] x^j) * phi_lower^upper(x).
struct TestFunction {
  std::vector<double> coeffs;
  double lower = 0.0;
  double upper = 1.0;

  double operator()(double x) const;
};

struct TestFunctionFamily {
  std::vector<TestFunction> items;

  /// 12 items, cutoff-major: for (l, u) in (2,3), (4,5), (8,9), the monomials
  /// 1, x, x^2, x^3 times phi_l^u.
  static TestFunctionFamily standard();
};

using Measure = std::variant<Esd, LimitLaw>;

/// Exact finite sum for an Esd, law quadrature (density + atom) otherwise.
double integrate(const TestFunction& g, const Measure& mu);

/// sum_k |D_k| / (2^k (1 + |D_k|)), D_k = int g_k dmu - int g_k dnu, k from 1.
double dm_distance(const Measure& a, const Measure& b, const TestFunctionFamily& family);

/// Limit law matched to an ensemble: Semicircle, or MP with ratio p / n.
LimitLaw matching_law(const EnsembleSpec& spec);

/// p = max(1, round(y n)).
std::size_t mp_rows(double ratio, std::size_t n);

struct ExperimentConfig {
  EnsembleKind kind = EnsembleKind::Wigner;
  EntryDistribution dist = EntryDistribution::Rademacher;
  std::vector<std::size_t> sizes{100, 400};
  double ratio = 0.5;  ///< MP only: y in p = max(1, round(y n))
  unsigned trials = 5;
  std::uint64_t base_seed = 20240601;
  unsigned max_moment = 4;
  std::vector<ComplexPoint> z_grid{{0.0, 1.0}, {1.0, 0.5}, {-1.0, 0.25}};
  double kde_gamma = 0.5;  ///< KDE bandwidth eta = n^(gamma - 1)
  bool omega = false;       ///< also record max_k |Omega_k| at omega_z
  ComplexPoint omega_z{0.0, 1.0};

  /// Throws std::invalid_argument on an unusable configuration.
  void validate() const;
  bool operator==(const ExperimentConfig&) const;
};

struct TrialRecord {
  std::size_t size_index = 0;
  std::size_t n = 0;
  std::size_t p = 0;  ///< MP only
  unsigned trial = 0;
  std::uint64_t seed = 0;
  double kolmogorov = 0.0;
  double dm = 0.0;
  std::vector<double> moment_errors;     ///< k = 1..max_moment
  std::vector<double> transform_errors;  ///< one per z_grid point
  double kde_eta = 0.0;
  double kde_sup_error = 0.0;
  std::optional<double> max_abs_omega;
};

struct SizeSummary {
  std::size_t n = 0;
  std::size_t p = 0;
  std::string law;
  double median_kolmogorov = 0.0;
  double median_dm = 0.0;
  std::vector<double> median_moment_errors;
  std::vector<double> median_transform_errors;
  double median_kde_sup_error = 0.0;
  std::optional<double> median_max_abs_omega;
};

struct ConvergenceReport {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;  ///< sorted by (size index, trial)
  std::vector<SizeSummary> sizes;
};

/// Trial seed = derive_seed(base_seed, size index, trial index).
ConvergenceReport run_law_experiment(const ExperimentConfig& config);

double median(std::vector<double> values);

/// sup over grid points in [lo, hi] of |curve - density(law, .)|.
double sup_distance(const KdeCurve& curve, const LimitLaw& law, double lo, double hi);

struct KdeFigureConfig {
  std::size_t n = 100;
  EntryDistribution dist = EntryDistribution::Rademacher;
  std::vector<double> etas{0.1, 0.01};
  unsigned trials = 20;
  std::uint64_t base_seed = 20240601;
  double grid_lo = -3.0;
  double grid_hi = 3.0;
  double grid_step = 0.005;
  double window = 1.5;  ///< sup-distance taken over [-window, window]
};

struct KdeFigureSeries {
  double eta = 0.0;
  std::string label;  ///< "good" when eta > 1/n, "degraded" otherwise
  std::vector<double> sup_distances;  ///< per trial
  double mean_sup_distance = 0.0;
  double mean_value_at_zero = 0.0;
  double mean_mass = 0.0;  ///< trapezoid mass over the whole grid
  KdeCurve first_curve;    ///< trial 0, for plotting
};

/// Same matrices (trial t uses derive_seed(base_seed, 0, t)) for every eta.
std::vector<KdeFigureSeries> run_kde_figure(const KdeFigureConfig& config);

}  // namespace rmtlab
