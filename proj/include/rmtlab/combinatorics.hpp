#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/rational.hpp>

#include "rmtlab/counting.hpp"

namespace rmtlab {

/// Raised when an exhaustive enumeration would exceed its work budget.
class SizingError : public std::length_error {
 public:
  using std::length_error::length_error;
};

using Rational = boost::rational<std::int64_t>;

/// Canonical pattern of equal entries: c[0] = 1 and c[a] <= 1 + max(c[0..a-1]).
struct Coloring {
  std::vector<int> c;

  /// Throws std::invalid_argument when `c` violates the coloring condition.
  static Coloring checked(std::vector<int> c);
  int colors() const;
  auto operator<=>(const Coloring&) const = default;
};

bool is_coloring(std::span<const int> c);

/// Relabels entries by order of first appearance, e.g. (5,1,4,13,4) -> (1,2,3,4,3).
Coloring coloring_of(std::span<const int> t);

/// All colorings of length k in lexicographic order (Bell(k) of them).
std::vector<Coloring> enumerate_colorings(unsigned k);

/// #{t in [n]^k : t ~ c} = (n)_l, l = number of colors.
std::uint64_t count_matching(const Coloring& c, std::uint64_t n);

/// Same count by scanning all of [n]^k.
std::uint64_t brute_force_matching(const Coloring& c, unsigned n);

/// One scan of [n]^k bucketing every tuple by its coloring; colorings with
/// an empty class are absent from the map.
std::map<Coloring, std::uint64_t> coloring_class_sizes(unsigned k, unsigned n);

/// rho[l-1] = number of distinct l-fold undirected edge classes.
struct Profile {
  std::vector<int> rho;

  int weighted_sum() const;  ///< sum l * rho_l
  int edge_classes() const;  ///< sum rho_l
  bool has_odd_edge() const;
  auto operator<=>(const Profile&) const = default;
};

/// Cyclic walk t1 -> t2 -> ... -> tk -> t1 with undirected edges (loops allowed).
Profile profile_of_wigner(std::span<const int> t);

/// Bipartite walk s1,t1,s2,t2,...,sk,tk,s1: edges {s_i,t_i} and {s_{i+1},t_i}.
/// S- and T-labels live on different sides even when equal.
Profile profile_of_mp(std::span<const int> s, std::span<const int> t);

/// Number of distinct loop classes {i,i} in the Wigner walk of t.
int loop_classes(std::span<const int> t);

/// Distinct labels in t.
int vertex_count(std::span<const int> t);

/// Every undirected edge of the Wigner walk has even multiplicity.
bool all_edges_even_wigner(std::span<const int> t);
bool all_edges_even_mp(std::span<const int> s, std::span<const int> t);

/// +-1 steps, total 0, all prefix sums >= 0.
struct WignerPds {
  std::vector<int> steps;
  auto operator<=>(const WignerPds&) const = default;
};

/// (D1,U1,...,Dk,Uk) with D in {-1,0}, U in {0,1}, sum U = r = -sum D,
/// all prefix sums >= 0.
struct MpPds {
  std::vector<int> steps;
  auto operator<=>(const MpPds&) const = default;
};

/// Exhaustive and lexicographically sorted (-1 < +1). Throws for odd two_k.
std::vector<WignerPds> enumerate_wigner_pds(unsigned two_k);

/// Exhaustive and lexicographically sorted (-1 < 0 < 1). Requires r < k.
std::vector<MpPds> enumerate_mp_pds(unsigned k, unsigned r);

/// Canonical double-edged tree walk of a Wigner-pds (length 2k, labels from 1).
std::vector<int> wigner_tuple_of(const WignerPds& d);

/// Discovery (+1) / backtrack (-1) encoding of a double-edged tree walk.
WignerPds wigner_pds_of(std::span<const int> t);

/// Last-departure (D = -1) / new S-vertex (U = 1) encoding of a bipartite walk.
MpPds mp_pds_of(std::span<const int> s, std::span<const int> t);

/// Closed form C_{k/2} (n)_{k/2+1} for walks of even length k.
std::uint64_t count_tn_tree_cycles(std::uint64_t n, unsigned k);

/// Exhaustive search over [n]^k for walks with only double edges and
/// k/2 + 1 vertices.
std::uint64_t brute_force_tn_tree_cycles(unsigned n, unsigned k);

/// Closed form (1/(r+1)) binom(k-1,r) binom(k,r) (p)_{r+1} (n)_{k-r}.
std::uint64_t count_tpn_mp(std::uint64_t p, std::uint64_t n, unsigned k, unsigned r);

/// Exhaustive search over [p]^k x [n]^k for double-edged tree walks with
/// r+1 S-vertices and k-r T-vertices.
std::uint64_t brute_force_tpn_mp(unsigned p, unsigned n, unsigned k, unsigned r);

struct MomentEnsemble {
  bool wigner = true;
  unsigned n = 1;
  unsigned p = 1;  ///< MP only

  static MomentEnsemble Wigner(unsigned n) { return {true, n, 0}; }
  static MomentEnsemble MP(unsigned p, unsigned n) { return {false, n, p}; }
};

/// Exact E[(1/n) tr W^k] (Wigner) or E[(1/p) tr V^k] (MP) for independent +-1
/// entries: a walk contributes 1 iff all its edges have even multiplicity.
/// Guarded at n^k <= 1e7 (p^k n^k for MP); throws SizingError beyond.
Rational exact_expected_moment_pm1(const MomentEnsemble& ensemble, unsigned k);

}  // namespace rmtlab
