#include <doctest.h>

#include <algorithm>
#include <set>

#include "rmtlab/combinatorics.hpp"

using namespace rmtlab;

namespace {

// Odometer over [n]^k without any library help.
template <typename F>
void each_tuple(unsigned n, unsigned k, F f) {
  std::vector<int> t(k, 1);
  while (true) {
    f(t);
    std::size_t i = k;
    while (i > 0 && t[i - 1] == static_cast<int>(n)) t[--i] = 1;
    if (i == 0) return;
    ++t[i - 1];
  }
}

}  // namespace

TEST_CASE("coloring of a tuple") {
  CHECK(coloring_of(std::vector<int>{5, 1, 4, 13, 4}).c == std::vector<int>{1, 2, 3, 4, 3});
  CHECK(coloring_of(std::vector<int>{7, 7, 7}).c == std::vector<int>{1, 1, 1});
  CHECK(coloring_of(std::vector<int>{1, 2, 3}).c == std::vector<int>{1, 2, 3});
  CHECK_THROWS(coloring_of(std::vector<int>{}));
  for (unsigned k = 1; k <= 6; ++k)
    for (const Coloring& c : enumerate_colorings(k)) CHECK(coloring_of(c.c) == c);
  CHECK_THROWS(Coloring::checked({2, 1}));
  CHECK_THROWS(Coloring::checked({1, 3}));
}

TEST_CASE("colorings are enumerated in lexicographic order, Bell many") {
  const unsigned bell[] = {1, 2, 5, 15, 52, 203, 877};
  for (unsigned k = 1; k <= 7; ++k) {
    const auto cs = enumerate_colorings(k);
    CHECK(cs.size() == bell[k - 1]);
    CHECK(std::is_sorted(cs.begin(), cs.end()));
    CHECK(std::adjacent_find(cs.begin(), cs.end()) == cs.end());
  }
}

TEST_CASE("count_matching examples") {
  CHECK(count_matching(Coloring::checked({1, 2, 1}), 3) == 6);
  CHECK(count_matching(Coloring::checked({1}), 9) == 9);
  CHECK(count_matching(Coloring::checked({1, 2, 3}), 2) == 0);
  CHECK(brute_force_matching(Coloring::checked({1, 2, 1}), 3) == 6);
}

TEST_CASE("coloring classes have size (n)_l for n, k <= 5") {
  for (unsigned k = 1; k <= 5; ++k)
    for (unsigned n = 1; n <= 5; ++n) {
      const auto sizes = coloring_class_sizes(k, n);
      for (const Coloring& c : enumerate_colorings(k)) {
        const auto it = sizes.find(c);
        const std::uint64_t got = it == sizes.end() ? 0 : it->second;
        CHECK(got == count_matching(c, n));
      }
    }
}

TEST_CASE("profiles") {
  CHECK(profile_of_wigner(std::vector<int>{1, 2}).rho == std::vector<int>{0, 1});
  CHECK(profile_of_wigner(std::vector<int>{1, 1}).rho == std::vector<int>{0, 1});
  CHECK(profile_of_wigner(std::vector<int>{1, 2, 3}).rho == std::vector<int>{3, 0, 0});
  CHECK(profile_of_mp(std::vector<int>{1}, std::vector<int>{1}).rho == std::vector<int>{0, 1});
  CHECK(profile_of_mp(std::vector<int>{1, 2}, std::vector<int>{1, 2}).rho == std::vector<int>{4, 0, 0, 0});
  CHECK(profile_of_mp(std::vector<int>{1, 1}, std::vector<int>{1, 2}).rho == std::vector<int>{0, 2, 0, 0});
  CHECK(loop_classes(std::vector<int>{1, 1, 2, 2, 1}) == 2);
  CHECK(loop_classes(std::vector<int>{1, 1, 1}) == 1);
  CHECK(vertex_count(std::vector<int>{4, 1, 4, 9}) == 3);
}

TEST_CASE("profile conservation") {
  for (unsigned k = 1; k <= 5; ++k)
    each_tuple(4, k, [&](const std::vector<int>& t) { CHECK(profile_of_wigner(t).weighted_sum() == int(k)); });
  for (unsigned k = 1; k <= 3; ++k)
    each_tuple(3, k, [&](const std::vector<int>& s) {
      each_tuple(3, k, [&](const std::vector<int>& t) { CHECK(profile_of_mp(s, t).weighted_sum() == int(2 * k)); });
    });
}

TEST_CASE("node-count bounds hold exhaustively for n <= 4, k <= 5") {
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned k = 1; k <= 5; ++k)
      each_tuple(n, k, [&](const std::vector<int>& t) {
        const Profile p = profile_of_wigner(t);
        const int v = vertex_count(t);
        CHECK(v <= 1 + p.edge_classes() - loop_classes(t));
        if (p.has_odd_edge()) CHECK(v <= p.edge_classes());
      });
}

TEST_CASE("wigner path-difference sequences") {
  const auto two = enumerate_wigner_pds(2);
  REQUIRE(two.size() == 1);
  CHECK(two[0].steps == std::vector<int>{1, -1});
  CHECK(enumerate_wigner_pds(4).size() == 2);
  CHECK(enumerate_wigner_pds(8).size() == 14);
  CHECK_THROWS(enumerate_wigner_pds(3));
  for (unsigned k = 1; k <= 7; ++k) {
    const auto all = enumerate_wigner_pds(2 * k);
    CHECK(all.size() == catalan(k));
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    // Independent filter over all 2^(2k) sign sequences.
    std::uint64_t filtered = 0;
    for (unsigned mask = 0; mask < (1u << (2 * k)); ++mask) {
      int h = 0;
      bool ok = true;
      for (unsigned i = 0; i < 2 * k && ok; ++i) {
        h += (mask >> (2 * k - 1 - i)) & 1 ? 1 : -1;
        ok = h >= 0;
      }
      if (ok && h == 0) ++filtered;
    }
    CHECK(filtered == all.size());
  }
}

TEST_CASE("tree walks and path-difference sequences correspond") {
  for (unsigned k = 1; k <= 6; ++k) {
    std::set<std::vector<int>> tuples;
    for (const WignerPds& d : enumerate_wigner_pds(2 * k)) {
      const auto t = wigner_tuple_of(d);
      CHECK(t.size() == 2 * k);
      CHECK(coloring_of(t).c == t);
      CHECK(vertex_count(t) == int(k + 1));
      const Profile p = profile_of_wigner(t);
      CHECK(p.rho[1] == int(k));
      CHECK(p.edge_classes() == int(k));
      CHECK(wigner_pds_of(t) == d);
      tuples.insert(t);
    }
    CHECK(tuples.size() == catalan(k));
  }
}

TEST_CASE("mp path-difference sequences") {
  for (unsigned k = 1; k <= 7; ++k) {
    const auto zero = enumerate_mp_pds(k, 0);
    REQUIRE(zero.size() == 1);
    CHECK(std::all_of(zero[0].steps.begin(), zero[0].steps.end(), [](int v) { return v == 0; }));
  }
  const auto k2 = enumerate_mp_pds(2, 1);
  REQUIRE(k2.size() == 1);
  CHECK(k2[0].steps == std::vector<int>{0, 1, -1, 0});
  CHECK(enumerate_mp_pds(3, 1).size() == 3);
  for (unsigned k = 1; k <= 7; ++k) {
    std::uint64_t row = 0;
    for (unsigned r = 0; r < k; ++r) {
      const auto all = enumerate_mp_pds(k, r);
      CHECK(all.size() == narayana_mp(k, r));
      CHECK(std::is_sorted(all.begin(), all.end()));
      for (const MpPds& m : all) {
        CHECK(m.steps[0] == 0);          // D_1
        CHECK(m.steps[2 * k - 1] == 0);  // U_k
      }
      row += all.size();
    }
    CHECK(row == catalan(k));
  }
  CHECK_THROWS(enumerate_mp_pds(3, 3));
}

TEST_CASE("wigner tree-cycle counts") {
  CHECK(count_tn_tree_cycles(3, 2) == 6);
  CHECK(count_tn_tree_cycles(2, 4) == 0);
  CHECK(count_tn_tree_cycles(4, 4) == 48);
  CHECK_THROWS(count_tn_tree_cycles(4, 3));
  for (unsigned n = 1; n <= 5; ++n)
    for (unsigned k = 2; k <= 6; k += 2) CHECK(brute_force_tn_tree_cycles(n, k) == count_tn_tree_cycles(n, k));
}

TEST_CASE("wigner tree-cycle brute force agrees with a plain filter") {
  for (unsigned n = 1; n <= 4; ++n)
    for (unsigned k = 2; k <= 6; k += 2) {
      std::uint64_t hits = 0;
      each_tuple(n, k, [&](const std::vector<int>& t) {
        const Profile p = profile_of_wigner(t);
        if (p.rho[1] == int(k / 2) && p.edge_classes() == int(k / 2) && vertex_count(t) == int(k / 2 + 1)) ++hits;
      });
      CHECK(hits == brute_force_tn_tree_cycles(n, k));
    }
}

TEST_CASE("mp tree-cycle counts") {
  CHECK(count_tpn_mp(2, 2, 1, 0) == 4);
  CHECK(count_tpn_mp(3, 3, 2, 1) == 18);
  CHECK(count_tpn_mp(1, 5, 3, 1) == 0);
  CHECK(brute_force_tpn_mp(2, 2, 1, 0) == 4);
  CHECK(brute_force_tpn_mp(3, 3, 2, 1) == 18);
  for (unsigned p = 1; p <= 4; ++p)
    for (unsigned n = 1; n <= 4; ++n)
      for (unsigned k = 1; k <= 4; ++k)
        for (unsigned r = 0; r < k; ++r) CHECK(brute_force_tpn_mp(p, n, k, r) == count_tpn_mp(p, n, k, r));
}

TEST_CASE("mp tree walks split evenly over path-difference classes") {
  // Every bipartite double tree walk maps to a sequence in M(k, r); each class
  // must hold (p)_{r+1} (n)_{k-r} walks.
  const unsigned p = 3, n = 3;
  for (unsigned k = 1; k <= 3; ++k) {
    for (unsigned r = 0; r < k; ++r) {
      std::map<MpPds, std::uint64_t> classes;
      each_tuple(p, k, [&](const std::vector<int>& s) {
        each_tuple(n, k, [&](const std::vector<int>& t) {
          const Profile prof = profile_of_mp(s, t);
          if (prof.rho[1] == int(k) && prof.edge_classes() == int(k) && vertex_count(s) == int(r + 1) &&
              vertex_count(t) == int(k - r))
            ++classes[mp_pds_of(s, t)];
        });
      });
      const auto shapes = enumerate_mp_pds(k, r);
      const std::uint64_t each = falling_factorial(p, r + 1) * falling_factorial(n, k - r);
      if (each == 0) continue;
      CHECK(classes.size() == shapes.size());
      for (const MpPds& m : shapes) CHECK(classes[m] == each);
    }
  }
}

TEST_CASE("exact expected moments for +-1 entries") {
  for (unsigned n = 1; n <= 8; ++n) CHECK(exact_expected_moment_pm1(MomentEnsemble::Wigner(n), 2) == Rational(1));
  CHECK(exact_expected_moment_pm1(MomentEnsemble::Wigner(5), 1) == Rational(0));
  CHECK(exact_expected_moment_pm1(MomentEnsemble::Wigner(4), 3) == Rational(0));
  // Frozen values from an independent itertools/Fraction enumeration.
  CHECK(exact_expected_moment_pm1(MomentEnsemble::Wigner(4), 4) == Rational(7, 4));
  CHECK(exact_expected_moment_pm1(MomentEnsemble::Wigner(9), 4) == Rational(17, 9));
  CHECK(exact_expected_moment_pm1(MomentEnsemble::Wigner(3), 6) == Rational(89, 27));
  CHECK(exact_expected_moment_pm1(MomentEnsemble::Wigner(4), 6) == Rational(119, 32));
  CHECK(exact_expected_moment_pm1(MomentEnsemble::Wigner(5), 6) == Rational(497, 125));
  for (unsigned p = 1; p <= 3; ++p)
    for (unsigned n = 1; n <= 3; ++n) CHECK(exact_expected_moment_pm1(MomentEnsemble::MP(p, n), 1) == Rational(1));
  CHECK(exact_expected_moment_pm1(MomentEnsemble::MP(2, 3), 2) == Rational(4, 3));
  CHECK(exact_expected_moment_pm1(MomentEnsemble::MP(3, 2), 2) == Rational(2));
  CHECK(exact_expected_moment_pm1(MomentEnsemble::MP(2, 2), 3) == Rational(5, 2));
  CHECK_THROWS_AS(exact_expected_moment_pm1(MomentEnsemble::Wigner(100), 4), SizingError);
  CHECK_THROWS_AS(exact_expected_moment_pm1(MomentEnsemble::MP(10, 10), 4), SizingError);
}

TEST_CASE("sizing guards fail fast") {
  CHECK_THROWS_AS(brute_force_matching(Coloring::checked({1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}), 30), SizingError);
  CHECK_THROWS_AS(brute_force_tpn_mp(40, 40, 8, 2), SizingError);
}
