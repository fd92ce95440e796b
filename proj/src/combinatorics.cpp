#include "rmtlab/combinatorics.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>

namespace rmtlab {

namespace {

// Raw search-space sizes beyond these fail fast instead of running for hours.
constexpr double kDfsSpaceLimit = 1e10;
constexpr double kMomentSpaceLimit = 1e7;
constexpr double kMatchingSpaceLimit = 1e8;

double ipow(double base, unsigned e) {
  double r = 1.0;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

void guard_space(double space, double limit, const char* what) {
  if (space > limit) {
    throw SizingError(std::string(what) + ": search space " + std::to_string(space) +
                      " exceeds limit " + std::to_string(limit));
  }
}

// Advances t over [1..n]^k in lexicographic order; false after the last tuple.
bool next_tuple(std::vector<int>& t, int n) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (t[i] < n) {
      ++t[i];
      return true;
    }
    t[i] = 1;
  }
  return false;
}

using EdgeKey = std::pair<int, int>;

EdgeKey undirected(int a, int b) { return a <= b ? EdgeKey{a, b} : EdgeKey{b, a}; }

Profile profile_from(const std::map<EdgeKey, int>& mult, std::size_t length) {
  Profile p;
  p.rho.assign(length, 0);
  for (const auto& [edge, m] : mult) {
    (void)edge;
    ++p.rho[static_cast<std::size_t>(m - 1)];
  }
  return p;
}

std::map<EdgeKey, int> wigner_edges(std::span<const int> t) {
  std::map<EdgeKey, int> mult;
  const std::size_t k = t.size();
  for (std::size_t i = 0; i < k; ++i) ++mult[undirected(t[i], t[(i + 1) % k])];
  return mult;
}

// Bipartite edges keyed as (S label, T label); the sides never mix.
std::map<EdgeKey, int> mp_edges(std::span<const int> s, std::span<const int> t) {
  if (s.size() != t.size()) throw std::invalid_argument("bipartite walk: |s| != |t|");
  std::map<EdgeKey, int> mult;
  const std::size_t k = s.size();
  for (std::size_t i = 0; i < k; ++i) {
    ++mult[{s[i], t[i]}];
    ++mult[{s[(i + 1) % k], t[i]}];
  }
  return mult;
}

bool all_even(const std::map<EdgeKey, int>& mult) {
  return std::all_of(mult.begin(), mult.end(), [](const auto& e) { return e.second % 2 == 0; });
}

// Tiny multiset of edges for the inner loops of the searches below.
struct EdgeBag {
  std::array<EdgeKey, 32> key{};
  std::array<int, 32> count{};
  int size = 0;

  // Returns the new multiplicity of e.
  int add(EdgeKey e) {
    for (int i = 0; i < size; ++i) {
      if (key[i] == e) return ++count[i];
    }
    key[size] = e;
    count[size] = 1;
    ++size;
    return 1;
  }
  void remove(EdgeKey e) {
    for (int i = size; i-- > 0;) {
      if (key[i] == e) {
        if (--count[i] == 0) {
          key[i] = key[size - 1];
          count[i] = count[size - 1];
          --size;
        }
        return;
      }
    }
  }
};

struct LabelCounter {
  std::array<int, 64> seen{};
  int distinct = 0;
  void add(int v) {
    if (seen[v]++ == 0) ++distinct;
  }
  void remove(int v) {
    if (--seen[v] == 0) --distinct;
  }
};

}  // namespace

// ---------------------------------------------------------------- colorings

bool is_coloring(std::span<const int> c) {
  if (c.empty() || c[0] != 1) return false;
  int mx = 1;
  for (std::size_t a = 1; a < c.size(); ++a) {
    if (c[a] < 1 || c[a] > mx + 1) return false;
    mx = std::max(mx, c[a]);
  }
  return true;
}

Coloring Coloring::checked(std::vector<int> c) {
  if (!is_coloring(c)) throw std::invalid_argument("Coloring: sequence violates c1 = 1, c(a+1) <= 1 + max");
  return Coloring{std::move(c)};
}

int Coloring::colors() const { return c.empty() ? 0 : *std::max_element(c.begin(), c.end()); }

Coloring coloring_of(std::span<const int> t) {
  if (t.empty()) throw std::invalid_argument("coloring_of: empty tuple");
  std::map<int, int> first;
  Coloring out;
  out.c.reserve(t.size());
  for (int v : t) {
    auto [it, inserted] = first.try_emplace(v, static_cast<int>(first.size()) + 1);
    (void)inserted;
    out.c.push_back(it->second);
  }
  return out;
}

std::vector<Coloring> enumerate_colorings(unsigned k) {
  if (k == 0) throw std::invalid_argument("enumerate_colorings: k must be positive");
  std::vector<Coloring> out;
  std::vector<int> c(k, 1);
  std::function<void(unsigned, int)> rec = [&](unsigned pos, int mx) {
    if (pos == k) {
      out.push_back(Coloring{c});
      return;
    }
    for (int v = 1; v <= mx + 1; ++v) {
      c[pos] = v;
      rec(pos + 1, std::max(mx, v));
    }
  };
  rec(1, 1);
  return out;
}

std::uint64_t count_matching(const Coloring& c, std::uint64_t n) {
  if (!is_coloring(c.c)) throw std::invalid_argument("count_matching: invalid coloring");
  return falling_factorial(n, static_cast<unsigned>(c.colors()));
}

std::uint64_t brute_force_matching(const Coloring& c, unsigned n) {
  if (n == 0) throw std::invalid_argument("brute_force_matching: n must be positive");
  const unsigned k = static_cast<unsigned>(c.c.size());
  guard_space(ipow(n, k), kMatchingSpaceLimit, "brute_force_matching");
  std::vector<int> t(k, 1);
  std::uint64_t hits = 0;
  do {
    if (coloring_of(t) == c) ++hits;
  } while (next_tuple(t, static_cast<int>(n)));
  return hits;
}

std::map<Coloring, std::uint64_t> coloring_class_sizes(unsigned k, unsigned n) {
  if (k == 0 || n == 0) throw std::invalid_argument("coloring_class_sizes: k and n must be positive");
  guard_space(ipow(n, k), kMatchingSpaceLimit, "coloring_class_sizes");
  std::map<Coloring, std::uint64_t> sizes;
  std::vector<int> t(k, 1);
  do {
    ++sizes[coloring_of(t)];
  } while (next_tuple(t, static_cast<int>(n)));
  return sizes;
}

// ----------------------------------------------------------------- profiles

int Profile::weighted_sum() const {
  int s = 0;
  for (std::size_t l = 0; l < rho.size(); ++l) s += static_cast<int>(l + 1) * rho[l];
  return s;
}

int Profile::edge_classes() const {
  int s = 0;
  for (int r : rho) s += r;
  return s;
}

bool Profile::has_odd_edge() const {
  for (std::size_t l = 0; l < rho.size(); l += 2) {
    if (rho[l] > 0) return true;
  }
  return false;
}

Profile profile_of_wigner(std::span<const int> t) {
  if (t.empty()) throw std::invalid_argument("profile_of_wigner: empty tuple");
  return profile_from(wigner_edges(t), t.size());
}

Profile profile_of_mp(std::span<const int> s, std::span<const int> t) {
  if (s.empty()) throw std::invalid_argument("profile_of_mp: empty tuple");
  return profile_from(mp_edges(s, t), 2 * s.size());
}

int loop_classes(std::span<const int> t) {
  int loops = 0;
  for (const auto& [e, m] : wigner_edges(t)) {
    (void)m;
    if (e.first == e.second) ++loops;
  }
  return loops;
}

int vertex_count(std::span<const int> t) {
  std::vector<int> v(t.begin(), t.end());
  std::sort(v.begin(), v.end());
  return static_cast<int>(std::unique(v.begin(), v.end()) - v.begin());
}

bool all_edges_even_wigner(std::span<const int> t) { return all_even(wigner_edges(t)); }

bool all_edges_even_mp(std::span<const int> s, std::span<const int> t) {
  return all_even(mp_edges(s, t));
}

// ------------------------------------------------------ path-difference seqs

std::vector<WignerPds> enumerate_wigner_pds(unsigned two_k) {
  if (two_k == 0 || two_k % 2 != 0) {
    throw std::invalid_argument("enumerate_wigner_pds: length must be even and positive");
  }
  std::vector<WignerPds> out;
  std::vector<int> d(two_k);
  // -1 is tried before +1, so the output comes out sorted.
  std::function<void(unsigned, int)> rec = [&](unsigned pos, int height) {
    if (pos == two_k) {
      if (height == 0) out.push_back(WignerPds{d});
      return;
    }
    const int remaining = static_cast<int>(two_k - pos);
    if (height > 0) {
      d[pos] = -1;
      rec(pos + 1, height - 1);
    }
    if (height + 1 <= remaining - 1) {
      d[pos] = +1;
      rec(pos + 1, height + 1);
    }
  };
  rec(0, 0);
  return out;
}

std::vector<MpPds> enumerate_mp_pds(unsigned k, unsigned r) {
  if (k == 0 || r >= k) throw std::invalid_argument("enumerate_mp_pds: need 0 <= r <= k-1");
  std::vector<MpPds> out;
  std::vector<int> m(2 * k);
  const int target = static_cast<int>(r);
  std::function<void(unsigned, int, int, int)> rec = [&](unsigned pos, int height, int ups,
                                                         int downs) {
    if (ups > target || downs > target) return;
    if (pos == 2 * k) {
      if (ups == target && downs == target) out.push_back(MpPds{m});
      return;
    }
    const bool down_slot = pos % 2 == 0;
    const int lo = down_slot ? -1 : 0;
    const int hi = down_slot ? 0 : 1;
    for (int v = lo; v <= hi; ++v) {
      if (height + v < 0) continue;
      m[pos] = v;
      rec(pos + 1, height + v, ups + (v == 1), downs + (v == -1));
    }
  };
  rec(0, 0, 0, 0);
  return out;
}

std::vector<int> wigner_tuple_of(const WignerPds& d) {
  std::vector<int> t;
  std::vector<int> stack{1};
  int next_label = 2;
  t.push_back(1);
  for (std::size_t i = 0; i + 1 < d.steps.size(); ++i) {
    if (d.steps[i] == +1) {
      stack.push_back(next_label++);
    } else {
      stack.pop_back();
      if (stack.empty()) throw std::invalid_argument("wigner_tuple_of: not a path-difference sequence");
    }
    t.push_back(stack.back());
  }
  return t;
}

WignerPds wigner_pds_of(std::span<const int> t) {
  WignerPds d;
  const std::size_t k = t.size();
  d.steps.reserve(k);
  for (std::size_t l = 0; l < k; ++l) {
    const bool fresh =
        l + 1 < k && std::find(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(l + 1), t[l + 1]) ==
                         t.begin() + static_cast<std::ptrdiff_t>(l + 1);
    d.steps.push_back(fresh ? +1 : -1);
  }
  return d;
}

MpPds mp_pds_of(std::span<const int> s, std::span<const int> t) {
  if (s.size() != t.size() || s.empty()) throw std::invalid_argument("mp_pds_of: bad tuple sizes");
  const std::size_t k = s.size();
  MpPds m;
  m.steps.reserve(2 * k);
  for (std::size_t l = 0; l < k; ++l) {
    // D: the down step leaves s_l and the walk never stands on s_l again
    // (the walk ends on s_1, so s_1 is never left for good).
    bool last_departure = s[l] != s[0];
    for (std::size_t j = l + 1; j < k && last_departure; ++j) {
      if (s[j] == s[l]) last_departure = false;
    }
    m.steps.push_back(last_departure ? -1 : 0);
    // U: the up step reaches a new S-vertex.
    bool fresh = false;
    if (l + 1 < k) {
      fresh = std::find(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(l + 1), s[l + 1]) ==
              s.begin() + static_cast<std::ptrdiff_t>(l + 1);
    }
    m.steps.push_back(fresh ? 1 : 0);
  }
  return m;
}

// ---------------------------------------------------------- tree-cycle counts

std::uint64_t count_tn_tree_cycles(std::uint64_t n, unsigned k) {
  if (k == 0 || k % 2 != 0) throw std::invalid_argument("count_tn_tree_cycles: k must be even and positive");
  const u128 v = static_cast<u128>(catalan(k / 2)) * falling_factorial(n, k / 2 + 1);
  if (v > UINT64_MAX) throw std::overflow_error("count_tn_tree_cycles: result exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

std::uint64_t brute_force_tn_tree_cycles(unsigned n, unsigned k) {
  if (k == 0 || k % 2 != 0) {
    throw std::invalid_argument("brute_force_tn_tree_cycles: k must be even and positive");
  }
  if (n == 0 || n >= 64 || k > 30) throw std::invalid_argument("brute_force_tn_tree_cycles: size out of range");
  guard_space(ipow(n, k), kDfsSpaceLimit, "brute_force_tn_tree_cycles");

  const int half = static_cast<int>(k / 2);
  std::vector<int> t(k);
  EdgeBag edges;
  LabelCounter verts;
  std::uint64_t hits = 0;

  // Only branches that already break "every edge exactly twice" or exceed the
  // vertex/edge budget of a double-edged tree are cut.
  std::function<void(unsigned)> rec = [&](unsigned pos) {
    if (pos == k) {
      const EdgeKey close = undirected(t[k - 1], t[0]);
      if (edges.add(close) <= 2 && edges.size == half && verts.distinct == half + 1) {
        bool doubled = true;
        for (int i = 0; i < edges.size; ++i) doubled = doubled && edges.count[i] == 2;
        if (doubled) ++hits;
      }
      edges.remove(close);
      return;
    }
    for (int v = 1; v <= static_cast<int>(n); ++v) {
      t[pos] = v;
      verts.add(v);
      if (verts.distinct <= half + 1) {
        if (pos == 0) {
          rec(pos + 1);
        } else {
          const EdgeKey e = undirected(t[pos - 1], v);
          if (edges.add(e) <= 2 && edges.size <= half) rec(pos + 1);
          edges.remove(e);
        }
      }
      verts.remove(v);
    }
  };
  rec(0);
  return hits;
}

std::uint64_t count_tpn_mp(std::uint64_t p, std::uint64_t n, unsigned k, unsigned r) {
  if (k == 0 || r >= k) throw std::invalid_argument("count_tpn_mp: need 0 <= r <= k-1");
  const u128 shapes = narayana_mp_u128(k, r);
  const u128 a = falling_factorial(p, r + 1);
  const u128 b = falling_factorial(n, k - r);
  u128 v = 0;
  if (shapes != 0 && a != 0 && b != 0) {
    if (__builtin_mul_overflow(shapes, a, &v) || __builtin_mul_overflow(v, b, &v) || v > UINT64_MAX) {
      throw std::overflow_error("count_tpn_mp: result exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(v);
}

std::uint64_t brute_force_tpn_mp(unsigned p, unsigned n, unsigned k, unsigned r) {
  if (k == 0 || r >= k) throw std::invalid_argument("brute_force_tpn_mp: need 0 <= r <= k-1");
  if (p == 0 || n == 0 || p >= 64 || n >= 64 || k > 15) {
    throw std::invalid_argument("brute_force_tpn_mp: size out of range");
  }
  guard_space(ipow(static_cast<double>(p) * n, k), kDfsSpaceLimit, "brute_force_tpn_mp");

  const int s_budget = static_cast<int>(r) + 1;
  const int t_budget = static_cast<int>(k - r);
  const int edge_budget = static_cast<int>(k);
  std::vector<int> s(k), t(k);
  EdgeBag edges;
  LabelCounter s_verts, t_verts;
  std::uint64_t hits = 0;

  // Walk positions alternate: slot 2i picks s_i, slot 2i+1 picks t_i.
  std::function<void(unsigned)> rec = [&](unsigned slot) {
    if (slot == 2 * k) {
      const EdgeKey close{s[0], t[k - 1]};
      if (edges.add(close) <= 2 && edges.size == edge_budget && s_verts.distinct == s_budget &&
          t_verts.distinct == t_budget) {
        bool doubled = true;
        for (int i = 0; i < edges.size; ++i) doubled = doubled && edges.count[i] == 2;
        if (doubled) ++hits;
      }
      edges.remove(close);
      return;
    }
    const unsigned i = slot / 2;
    const bool pick_s = slot % 2 == 0;
    const int range = static_cast<int>(pick_s ? p : n);
    for (int v = 1; v <= range; ++v) {
      LabelCounter& side = pick_s ? s_verts : t_verts;
      side.add(v);
      if (side.distinct <= (pick_s ? s_budget : t_budget)) {
        EdgeKey e{0, 0};
        bool has_edge = slot > 0;
        if (pick_s) {
          s[i] = v;
          if (has_edge) e = {v, t[i - 1]};  // up edge u_{i-1}
        } else {
          t[i] = v;
          e = {s[i], v};  // down edge d_i
        }
        if (!has_edge) {
          rec(slot + 1);
        } else {
          if (edges.add(e) <= 2 && edges.size <= edge_budget) rec(slot + 1);
          edges.remove(e);
        }
      }
      side.remove(v);
    }
  };
  rec(0);
  return hits;
}

// --------------------------------------------------------- expected moments

Rational exact_expected_moment_pm1(const MomentEnsemble& ensemble, unsigned k) {
  if (k == 0) throw std::invalid_argument("exact_expected_moment_pm1: k must be positive");
  if (ensemble.n == 0 || (!ensemble.wigner && ensemble.p == 0)) {
    throw std::invalid_argument("exact_expected_moment_pm1: dimensions must be positive");
  }
  const int n = static_cast<int>(ensemble.n);

  if (ensemble.wigner) {
    guard_space(ipow(n, k), kMomentSpaceLimit, "exact_expected_moment_pm1");
    // Odd k: the walk has an odd total edge count, so some edge is odd.
    if (k % 2 != 0) return Rational(0);
    std::vector<int> t(k, 1);
    std::int64_t hits = 0;
    do {
      if (all_edges_even_wigner(t)) ++hits;
    } while (next_tuple(t, n));
    std::int64_t denom = 1;
    for (unsigned i = 0; i < 1 + k / 2; ++i) denom *= n;
    return Rational(hits, denom);
  }

  const int p = static_cast<int>(ensemble.p);
  guard_space(ipow(static_cast<double>(p) * n, k), kMomentSpaceLimit, "exact_expected_moment_pm1");
  std::vector<int> s(k, 1);
  std::int64_t hits = 0;
  do {
    std::vector<int> t(k, 1);
    do {
      if (all_edges_even_mp(s, t)) ++hits;
    } while (next_tuple(t, n));
  } while (next_tuple(s, p));
  std::int64_t denom = p;
  for (unsigned i = 0; i < k; ++i) denom *= n;
  return Rational(hits, denom);
}

}  // namespace rmtlab
