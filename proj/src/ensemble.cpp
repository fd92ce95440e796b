#include "rmtlab/ensemble.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rmtlab {

std::string_view to_string(EntryDistribution dist) {
  switch (dist) {
    case EntryDistribution::Rademacher: return "rademacher";
    case EntryDistribution::UniformScaled: return "uniform";
    case EntryDistribution::StdGaussian: return "gaussian";
  }
  return "unknown";
}

EntryDistribution parse_distribution(std::string_view name) {
  if (name == "rademacher") return EntryDistribution::Rademacher;
  if (name == "uniform") return EntryDistribution::UniformScaled;
  if (name == "gaussian") return EntryDistribution::StdGaussian;
  throw std::invalid_argument("unknown entry distribution '" + std::string(name) +
                              "' (expected rademacher|uniform|gaussian)");
}

std::string_view to_string(EnsembleKind kind) {
  return kind == EnsembleKind::Wigner ? "wigner" : "mp";
}

EnsembleKind parse_ensemble(std::string_view name) {
  if (name == "wigner") return EnsembleKind::Wigner;
  if (name == "mp") return EnsembleKind::MarchenkoPastur;
  throw std::invalid_argument("unknown ensemble '" + std::string(name) + "' (expected wigner|mp)");
}

EnsembleSpec EnsembleSpec::wigner(std::size_t n, EntryDistribution dist, std::uint64_t seed) {
  return EnsembleSpec{EnsembleKind::Wigner, n, 0, dist, seed};
}

EnsembleSpec EnsembleSpec::mp(std::size_t p, std::size_t n, EntryDistribution dist,
                              std::uint64_t seed) {
  return EnsembleSpec{EnsembleKind::MarchenkoPastur, n, p, dist, seed};
}

double EntryStream::next_unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double EntryStream::next() {
  switch (dist_) {
    case EntryDistribution::Rademacher:
      return (engine_() >> 63) != 0 ? 1.0 : -1.0;
    case EntryDistribution::UniformScaled:
      return std::sqrt(3.0) * (2.0 * next_unit() - 1.0);
    case EntryDistribution::StdGaussian: {
      const double u1 = next_unit();
      const double u2 = next_unit();
      return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
  }
  throw std::logic_error("EntryStream: bad distribution");
}

SymMatrix sample_wigner(const EnsembleSpec& spec) {
  if (spec.kind != EnsembleKind::Wigner) {
    throw std::invalid_argument("sample_wigner: spec is not a Wigner ensemble");
  }
  if (spec.n == 0) throw std::invalid_argument("sample_wigner: n must be positive");
  const auto n = static_cast<Eigen::Index>(spec.n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.n));
  EntryStream stream(spec.dist, spec.seed);
  Eigen::MatrixXd w(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = stream.next() * scale;
      w(i, j) = v;
      w(j, i) = v;
    }
  }
  return SymMatrix::from_dense(std::move(w));
}

MpSample sample_mp(const EnsembleSpec& spec) {
  if (spec.kind != EnsembleKind::MarchenkoPastur) {
    throw std::invalid_argument("sample_mp: spec is not an MP ensemble");
  }
  if (spec.p == 0 || spec.n == 0) {
    throw std::invalid_argument("sample_mp: p and n must be positive");
  }
  const auto p = static_cast<Eigen::Index>(spec.p);
  const auto n = static_cast<Eigen::Index>(spec.n);
  EntryStream stream(spec.dist, spec.seed);
  Eigen::MatrixXd x(p, n);
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) x(i, j) = stream.next();
  }
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(p, p);
  v.selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0 / static_cast<double>(spec.n));
  v.triangularView<Eigen::StrictlyUpper>() = v.transpose();
  return MpSample{RectMatrix(std::move(x)), SymMatrix::from_dense(std::move(v))};
}

double dist_moment(EntryDistribution dist, unsigned q) {
  if (q % 2 == 1) return 0.0;
  switch (dist) {
    case EntryDistribution::Rademacher:
      return 1.0;
    case EntryDistribution::UniformScaled:
      // E x^q = 3^{q/2} / (q + 1)
      return std::pow(3.0, q / 2) / static_cast<double>(q + 1);
    case EntryDistribution::StdGaussian: {
      // (q - 1)!!
      double m = 1.0;
      for (unsigned j = 1; j < q; j += 2) m *= j;
      return m;
    }
  }
  throw std::logic_error("dist_moment: bad distribution");
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(base) ^ a) ^ b);
}

}  // namespace rmtlab
