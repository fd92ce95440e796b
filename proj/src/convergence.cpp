#include "rmtlab/convergence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "rmtlab/parallel.hpp"

namespace rmtlab {

double cutoff_eval(double lower, double upper, double x) {
  if (!(lower >= 0.0) || !(upper > lower)) throw std::invalid_argument("cutoff_eval: need u > l >= 0");
  const double ax = std::abs(x);
  if (ax <= lower) return 1.0;
  if (ax >= upper) return 0.0;
  return (upper - ax) / (upper - lower);
}

double TestFunction::operator()(double x) const {
  const double phi = cutoff_eval(lower, upper, x);
  if (phi == 0.0) return 0.0;
  double poly = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 0;) poly = poly * x + coeffs[j];
  return poly * phi;
}

TestFunctionFamily TestFunctionFamily::standard() {
  constexpr std::array<std::array<double, 2>, 3> cutoffs{{{2.0, 3.0}, {4.0, 5.0}, {8.0, 9.0}}};
  TestFunctionFamily fam;
  for (const auto& [l, u] : cutoffs) {
    for (std::size_t deg = 0; deg <= 3; ++deg) {
      std::vector<double> c(deg + 1, 0.0);
      c[deg] = 1.0;
      fam.items.push_back({std::move(c), l, u});
    }
  }
  return fam;
}

double integrate(const TestFunction& g, const Measure& mu) {
  if (const Esd* esd = std::get_if<Esd>(&mu)) {
    double acc = 0.0;
    for (double l : esd->eigenvalues()) acc += g(l);
    return acc * esd->weight();
  }
  const LimitLaw& law = std::get<LimitLaw>(mu);
  // The kinks of the cutoff sit at +-l and +-u.
  const std::array<double, 4> kinks{-g.upper, -g.lower, g.lower, g.upper};
  return expectation(law, [&](double x) { return g(x); }, kinks);
}

double dm_distance(const Measure& a, const Measure& b, const TestFunctionFamily& family) {
  if (family.items.empty()) throw std::invalid_argument("dm_distance: empty test-function family");
  double sum = 0.0;
  double scale = 1.0;
  for (const TestFunction& g : family.items) {
    scale *= 0.5;
    const double diff = std::abs(integrate(g, a) - integrate(g, b));
    sum += scale * diff / (1.0 + diff);
  }
  return sum;
}

std::size_t mp_rows(double ratio, std::size_t n) {
  if (!(ratio > 0.0)) throw std::invalid_argument("mp_rows: ratio must be positive");
  const double p = std::round(ratio * static_cast<double>(n));
  return std::max<std::size_t>(1, static_cast<std::size_t>(p));
}

LimitLaw matching_law(const EnsembleSpec& spec) {
  if (spec.kind == EnsembleKind::Wigner) return LimitLaw::semicircle();
  return LimitLaw::marchenko_pastur(static_cast<double>(spec.p) / static_cast<double>(spec.n));
}

void ExperimentConfig::validate() const {
  if (sizes.empty()) throw std::invalid_argument("config: sizes must be non-empty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) throw std::invalid_argument("config: sizes must be positive");
    if (i > 0 && sizes[i] <= sizes[i - 1]) throw std::invalid_argument("config: sizes must be strictly ascending");
  }
  if (trials == 0) throw std::invalid_argument("config: trials must be >= 1");
  if (kind == EnsembleKind::MarchenkoPastur && !(ratio > 0.0 && std::isfinite(ratio))) {
    throw std::invalid_argument("config: ratio must be positive");
  }
  if (!(kde_gamma > 0.0 && kde_gamma < 1.0)) throw std::invalid_argument("config: kde_gamma must lie in (0, 1)");
  for (const ComplexPoint& z : z_grid) z.require_upper("config z_grid");
  if (omega) omega_z.require_upper("config omega_z");
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  auto same_points = [](const std::vector<ComplexPoint>& a, const std::vector<ComplexPoint>& b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(),
                      [](const ComplexPoint& x, const ComplexPoint& y) { return x.re == y.re && x.im == y.im; });
  };
  return kind == o.kind && dist == o.dist && sizes == o.sizes && ratio == o.ratio && trials == o.trials &&
         base_seed == o.base_seed && max_moment == o.max_moment && same_points(z_grid, o.z_grid) &&
         kde_gamma == o.kde_gamma && omega == o.omega && omega_z.re == o.omega_z.re &&
         omega_z.im == o.omega_z.im;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

double sup_distance(const KdeCurve& curve, const LimitLaw& law, double lo, double hi) {
  double sup = 0.0;
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const double e = curve.grid[i];
    if (e < lo || e > hi) continue;
    sup = std::max(sup, std::abs(curve.values[i] - density(law, e)));
  }
  return sup;
}

namespace {

EnsembleSpec trial_spec(const ExperimentConfig& c, std::size_t n, std::uint64_t seed) {
  if (c.kind == EnsembleKind::Wigner) return EnsembleSpec::wigner(n, c.dist, seed);
  return EnsembleSpec::mp(mp_rows(c.ratio, n), n, c.dist, seed);
}

TrialRecord run_trial(const ExperimentConfig& c, std::size_t size_index, unsigned trial,
                      const TestFunctionFamily& family) {
  TrialRecord rec;
  rec.size_index = size_index;
  rec.n = c.sizes[size_index];
  rec.trial = trial;
  rec.seed = derive_seed(c.base_seed, size_index, trial);
  const EnsembleSpec spec = trial_spec(c, rec.n, rec.seed);
  rec.p = spec.kind == EnsembleKind::MarchenkoPastur ? spec.p : 0;
  const LimitLaw law = matching_law(spec);

  SymMatrix m;
  std::optional<MpSample> mp;
  if (spec.kind == EnsembleKind::Wigner) {
    m = sample_wigner(spec);
  } else {
    mp = sample_mp(spec);
    m = mp->v;
  }
  const Esd esd = esd_of(m);

  rec.kolmogorov = kolmogorov_distance(esd, law);
  rec.dm = dm_distance(esd, law, family);
  for (unsigned k = 1; k <= c.max_moment; ++k) {
    rec.moment_errors.push_back(std::abs(esd_moment(esd, k) - law_moment(law, k)));
  }
  for (const ComplexPoint& z : c.z_grid) {
    rec.transform_errors.push_back(std::abs(empirical_stieltjes(esd, z) - law_stieltjes(law, z)));
  }

  // Sup error of the bandwidth-n^(gamma-1) smoothing over the inner 3/4 of the bulk.
  rec.kde_eta = std::pow(static_cast<double>(rec.n), c.kde_gamma - 1.0);
  const double a = law.lower_edge();
  const double b = law.upper_edge();
  const double pad = 0.125 * (b - a);
  const KdeCurve curve = kde(esd, rec.kde_eta, uniform_grid(a + pad, b - pad, (b - a - 2 * pad) / 200.0));
  rec.kde_sup_error = sup_distance(curve, law, a + pad, b - pad);

  if (c.omega) {
    const OmegaOptions opts{.r_terms = false};
    const OmegaReport rep =
        mp ? omega_report_mp(mp->x, c.omega_z, opts) : omega_report_wigner(m, c.omega_z, opts);
    rec.max_abs_omega = rep.max_abs_omega;
  }
  return rec;
}

}  // namespace

ConvergenceReport run_law_experiment(const ExperimentConfig& config) {
  config.validate();
  ConvergenceReport report;
  report.config = config;
  const TestFunctionFamily family = TestFunctionFamily::standard();
  const std::size_t per_size = config.trials;
  const std::size_t total = config.sizes.size() * per_size;
  report.trials.resize(total);
  parallel_for(total, [&](std::size_t job) {
    const std::size_t s = job / per_size;
    const auto t = static_cast<unsigned>(job % per_size);
    try {
      report.trials[job] = run_trial(config, s, t, family);
    } catch (const std::exception& e) {
      throw std::runtime_error("trial " + std::to_string(t) + " at n = " + std::to_string(config.sizes[s]) +
                               ": " + e.what());
    }
  });

  for (std::size_t s = 0; s < config.sizes.size(); ++s) {
    const auto first = report.trials.begin() + static_cast<std::ptrdiff_t>(s * per_size);
    const std::vector<TrialRecord> group(first, first + static_cast<std::ptrdiff_t>(per_size));
    auto collect = [&](auto field) {
      std::vector<double> v;
      for (const TrialRecord& r : group) v.push_back(field(r));
      return median(std::move(v));
    };
    SizeSummary sum;
    sum.n = config.sizes[s];
    sum.p = group.front().p;
    sum.law = matching_law(trial_spec(config, sum.n, 0)).name();
    sum.median_kolmogorov = collect([](const TrialRecord& r) { return r.kolmogorov; });
    sum.median_dm = collect([](const TrialRecord& r) { return r.dm; });
    for (std::size_t k = 0; k < config.max_moment; ++k) {
      sum.median_moment_errors.push_back(collect([k](const TrialRecord& r) { return r.moment_errors[k]; }));
    }
    for (std::size_t j = 0; j < config.z_grid.size(); ++j) {
      sum.median_transform_errors.push_back(
          collect([j](const TrialRecord& r) { return r.transform_errors[j]; }));
    }
    sum.median_kde_sup_error = collect([](const TrialRecord& r) { return r.kde_sup_error; });
    if (config.omega) {
      sum.median_max_abs_omega = collect([](const TrialRecord& r) { return *r.max_abs_omega; });
    }
    report.sizes.push_back(std::move(sum));
  }
  return report;
}

std::vector<KdeFigureSeries> run_kde_figure(const KdeFigureConfig& config) {
  if (config.n == 0 || config.trials == 0 || config.etas.empty()) {
    throw std::invalid_argument("run_kde_figure: need n, trials and at least one eta");
  }
  for (double eta : config.etas) {
    if (!(eta > 0.0)) throw std::invalid_argument("run_kde_figure: bandwidths must be positive");
  }
  const LimitLaw law = LimitLaw::semicircle();
  const std::vector<double> grid = uniform_grid(config.grid_lo, config.grid_hi, config.grid_step);

  std::vector<Esd> spectra;
  spectra.reserve(config.trials);
  for (unsigned t = 0; t < config.trials; ++t) {
    spectra.push_back(esd_of(sample_wigner(EnsembleSpec::wigner(config.n, config.dist,
                                                                 derive_seed(config.base_seed, 0, t)))));
  }

  std::vector<KdeFigureSeries> out;
  for (double eta : config.etas) {
    KdeFigureSeries series;
    series.eta = eta;
    series.label = eta > 1.0 / static_cast<double>(config.n) ? "good" : "degraded";
    double at_zero = 0.0, mass = 0.0;
    for (unsigned t = 0; t < config.trials; ++t) {
      KdeCurve curve = kde(spectra[t], eta, grid);
      series.sup_distances.push_back(sup_distance(curve, law, -config.window, config.window));
      at_zero += kde(spectra[t], eta, {0.0}).values.front();
      mass += curve.trapezoid_mass(config.grid_lo, config.grid_hi);
      if (t == 0) series.first_curve = std::move(curve);
    }
    double total = 0.0;
    for (double d : series.sup_distances) total += d;
    const double trials = static_cast<double>(config.trials);
    series.mean_sup_distance = total / trials;
    series.mean_value_at_zero = at_zero / trials;
    series.mean_mass = mass / trials;
    out.push_back(std::move(series));
  }
  return out;
}

}  // namespace rmtlab
