#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string_view>

#include "rmtlab/matrix.hpp"

namespace rmtlab {

/// Standardized entry laws (mean 0, variance 1, all moments finite).
enum class EntryDistribution {
  Rademacher,     ///< +-1 with probability 1/2 each
  UniformScaled,  ///< uniform on [-sqrt(3), sqrt(3)]
  StdGaussian,    ///< N(0, 1)
};

std::string_view to_string(EntryDistribution dist);

/// Accepts "rademacher", "uniform" and "gaussian". Throws std::invalid_argument.
EntryDistribution parse_distribution(std::string_view name);

enum class EnsembleKind { Wigner, MarchenkoPastur };

std::string_view to_string(EnsembleKind kind);
EnsembleKind parse_ensemble(std::string_view name);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Wigner;
  std::size_t n = 1;  ///< Wigner dimension, or number of MP samples (columns)
  std::size_t p = 0;  ///< MP dimension (rows); unused for Wigner
  EntryDistribution dist = EntryDistribution::Rademacher;
  std::uint64_t seed = 0;

  static EnsembleSpec wigner(std::size_t n, EntryDistribution dist, std::uint64_t seed);
  static EnsembleSpec mp(std::size_t p, std::size_t n, EntryDistribution dist, std::uint64_t seed);

  bool operator==(const EnsembleSpec&) const = default;
};

/// Name of the seed-to-stream convention. Bump when the mapping changes.
inline constexpr std::string_view kStreamVersion = "rmtlab-stream-v1";

/// Deterministic stream of standardized draws.
///
/// The engine is std::mt19937_64 seeded with the 64-bit seed (its output
/// sequence is fixed by the C++ standard). Each draw consumes raw 64-bit words:
///   Rademacher     one word, sign from the top bit (1 -> +1, 0 -> -1)
///   UniformScaled  one word, u = (w >> 11) * 2^-53, x = sqrt(3) * (2u - 1)
///   StdGaussian    two words u1, u2 as above, x = sqrt(-2 ln(1 - u1)) cos(2 pi u2)
/// The standard library distributions are avoided because their output is
/// implementation defined.
class EntryStream {
 public:
  EntryStream(EntryDistribution dist, std::uint64_t seed) : dist_(dist), engine_(seed) {}
  double next();
  EntryDistribution distribution() const { return dist_; }

 private:
  double next_unit();
  EntryDistribution dist_;
  std::mt19937_64 engine_;
};

/// W(i,j) = x_ij / sqrt(n); upper triangle (diagonal included) filled in
/// row-major order from one EntryStream. Throws std::invalid_argument for the
/// wrong kind or n = 0.
SymMatrix sample_wigner(const EnsembleSpec& spec);

struct MpSample {
  RectMatrix x;  ///< p x n standardized data
  SymMatrix v;   ///< (1/n) X X^T
};

/// X filled row-major from one EntryStream; V = X X^T / n.
MpSample sample_mp(const EnsembleSpec& spec);

/// Closed-form q-th moment E[x^q] of the entry law.
double dist_moment(EntryDistribution dist, unsigned q);

/// splitmix64 finalizer applied to a mix of the base seed and two indices.
/// Used to derive per-trial seeds: derive_seed(base, size_index, trial_index).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

}  // namespace rmtlab
