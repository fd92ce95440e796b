#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rmtlab/laws.hpp"

using namespace rmtlab;

namespace {

const double kYs[] = {0.25, 0.5, 1.0, 2.0, 4.0};

std::vector<ComplexPoint> z_grid() {
  // 10 x 10 points with Im z spread log-uniformly over [0.05, 10].
  std::vector<ComplexPoint> zs;
  for (int i = 0; i < 10; ++i) {
    const double eta = 0.05 * std::pow(200.0, i / 9.0);
    for (int j = 0; j < 10; ++j) zs.push_back({-5.0 + 10.0 * j / 9.0, eta});
  }
  return zs;
}

}  // namespace

TEST_CASE("densities and atoms") {
  const LimitLaw sc = LimitLaw::semicircle();
  CHECK(density(sc, 0.0) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(density(sc, 3.0) == 0.0);
  CHECK(density(sc, -2.0) == 0.0);
  const LimitLaw mp1 = LimitLaw::marchenko_pastur(1.0);
  CHECK(density(mp1, 4.0) == 0.0);
  CHECK(density(mp1, -0.1) == 0.0);
  CHECK(atom_mass(sc) == 0.0);
  CHECK(atom_mass(LimitLaw::marchenko_pastur(2.0)) == 0.5);
  CHECK(atom_mass(mp1) == 0.0);
  CHECK(atom_mass(LimitLaw::marchenko_pastur(0.5)) == 0.0);
  CHECK_THROWS(LimitLaw::marchenko_pastur(0.0));
  CHECK_THROWS(LimitLaw::marchenko_pastur(-1.0));
  const LimitLaw mp4 = LimitLaw::marchenko_pastur(4.0);
  CHECK(mp4.lower_edge() == doctest::Approx(1.0));
  CHECK(mp4.upper_edge() == doctest::Approx(9.0));
}

TEST_CASE("closed-form moments") {
  const LimitLaw sc = LimitLaw::semicircle();
  CHECK(law_moment(sc, 0) == 1.0);
  CHECK(law_moment(sc, 3) == 0.0);
  CHECK(law_moment(sc, 6) == 5.0);
  CHECK(law_moment(sc, 80) == doctest::Approx(to_double(catalan_u128(40))));
  for (double y : kYs) {
    const LimitLaw mp = LimitLaw::marchenko_pastur(y);
    CHECK(law_moment(mp, 0) == 1.0);
    CHECK(law_moment(mp, 1) == doctest::Approx(1.0));
    CHECK(law_moment(mp, 2) == doctest::Approx(1.0 + y));
    CHECK(law_moment(mp, 3) == doctest::Approx(1.0 + 3 * y + y * y));
  }
}

TEST_CASE("catalan and friends") {
  CHECK(catalan(0) == 1);
  CHECK(catalan(3) == 5);
  CHECK(catalan(5) == 42);
  CHECK(catalan(35) == 3116285494907301262ull);
  CHECK_THROWS_AS(catalan(40), std::overflow_error);
  CHECK(binomial(10, 3) == 120);
  CHECK(narayana_mp(3, 1) == 3);
  CHECK(narayana_mp(4, 1) == 6);
  CHECK(narayana_mp(4, 4) == 0);
  CHECK(falling_factorial(4, 3) == 24);
  CHECK(falling_factorial(2, 3) == 0);
  CHECK(falling_factorial(7, 0) == 1);
}

TEST_CASE("principal square root branch") {
  const cplx a = principal_sqrt_upper(-5.0);
  CHECK(a.real() == doctest::Approx(0.0));
  CHECK(a.imag() == doctest::Approx(std::sqrt(5.0)));
  CHECK(principal_sqrt_upper(4.0) == cplx(2.0, 0.0));
  const cplx b = principal_sqrt_upper({-1.0, -4.0});
  CHECK(b.real() == doctest::Approx(-1.24962106768765317).epsilon(1e-14));
  CHECK(b.imag() == doctest::Approx(1.60048518044024084).epsilon(1e-14));
}

TEST_CASE("stieltjes transforms against fixed-point oracles") {
  struct Case {
    LimitLaw law;
    ComplexPoint z;
    cplx want;
  };
  const Case cases[] = {
      {LimitLaw::semicircle(), {0.0, 1.0}, {0.0, 0.618033988749894848}},
      {LimitLaw::semicircle(), {0.5, 0.1}, {-0.237108374004992169, 0.919621675717284672}},
      {LimitLaw::semicircle(), {-1.5, 2.0}, {0.184272032101853446, 0.325725512186503235}},
      {LimitLaw::marchenko_pastur(1.0), {0.0, 1.0}, {0.300242590220120419, 0.624810533843826587}},
      {LimitLaw::marchenko_pastur(0.25), {1.0, 0.5}, {-0.105990789762297253, 1.24435592657565961}},
      {LimitLaw::marchenko_pastur(4.0), {2.0, 0.3}, {-0.304266005099062817, 0.194623664316425410}},
  };
  for (const Case& c : cases) {
    const cplx got = law_stieltjes(c.law, c.z);
    CHECK(std::abs(got - c.want) <= 1e-12);
  }
  const cplx far = law_stieltjes(LimitLaw::semicircle(), {0.0, 10.0});
  CHECK(std::abs(far + 1.0 / cplx(0.0, 10.0)) <= 2.0 / 1000.0);
  CHECK_THROWS_AS(law_stieltjes(LimitLaw::semicircle(), {0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(law_stieltjes(LimitLaw::semicircle(), {1.0, -0.5}), std::domain_error);
}

TEST_CASE("self-consistent residuals") {
  const LimitLaw sc = LimitLaw::semicircle();
  const cplx r = sce_residual(sc, 0.0, {0.0, 1.0});
  CHECK(std::abs(r - cplx(0.0, -1.0)) <= 1e-15);
  for (const LimitLaw& law : {sc, LimitLaw::marchenko_pastur(0.25), LimitLaw::marchenko_pastur(1.0),
                              LimitLaw::marchenko_pastur(4.0)}) {
    for (const ComplexPoint& z : z_grid()) {
      CHECK(std::abs(sce_residual(law, law_stieltjes(law, z), z)) <= 1e-12);
    }
  }
  // A vanishing denominator is reported instead of dividing by it.
  CHECK_THROWS_AS(sce_residual(sc, {0.0, -1.0}, {0.0, 1.0}), std::domain_error);
}

TEST_CASE("transform properties on the grid") {
  for (const LimitLaw& law : {LimitLaw::semicircle(), LimitLaw::marchenko_pastur(0.5),
                              LimitLaw::marchenko_pastur(2.0)}) {
    for (const ComplexPoint& z : z_grid()) {
      const cplx s = law_stieltjes(law, z);
      CHECK(s.imag() > 0.0);
      CHECK(std::abs(s) <= 1.0 / z.im + 1e-12);
      // Reflection S(conj z) = conj S(z), with the left side integrated directly.
      const cplx via_density = expectation_complex(law, [&](double x) { return 1.0 / (x - std::conj(z.value())); });
      if (z.im >= 0.5) CHECK(std::abs(via_density - std::conj(s)) <= 1e-7);
    }
  }
}

TEST_CASE("branch separation") {
  for (const ComplexPoint& z : z_grid()) {
    const LimitLaw sc = LimitLaw::semicircle();
    const cplx m = law_stieltjes(sc, z);
    const cplx rej = rejected_branch(sc, z);
    CHECK((-z.value() - m).imag() <= -z.im + 1e-12);
    CHECK((-z.value() - rej).imag() >= -z.im / 2.0 - 1e-12);
  }
}

TEST_CASE("cdf values") {
  const LimitLaw sc = LimitLaw::semicircle();
  CHECK(cdf(sc, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cdf(sc, 2.0) == 1.0);
  CHECK(cdf(sc, -2.0) == 0.0);
  CHECK(cdf(sc, 1.0) == doctest::Approx(0.804498890522114679).epsilon(1e-10));
  CHECK(cdf(sc, -0.5) == doctest::Approx(0.342518821237146281).epsilon(1e-10));
  const LimitLaw mp2 = LimitLaw::marchenko_pastur(2.0);
  CHECK(cdf(mp2, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cdf_left(mp2, 0.0) == 0.0);
  CHECK(cdf(mp2, 1.0) == doctest::Approx(0.659154943091895336).epsilon(1e-9));
  CHECK(cdf(LimitLaw::marchenko_pastur(0.5), 1.0) == doctest::Approx(0.576004215103868562).epsilon(1e-9));
  CHECK(cdf(LimitLaw::marchenko_pastur(0.25), 0.6) == doctest::Approx(0.268961697972280389).epsilon(1e-9));
  double prev = 0.0;
  for (double x = -3.0; x <= 10.0; x += 0.05) {
    const double f = cdf(mp2, x);
    CHECK(f >= prev - 1e-14);
    prev = f;
  }
}

TEST_CASE("quadrature moments and normalization") {
  const LimitLaw sc = LimitLaw::semicircle();
  for (unsigned k = 0; k <= 10; ++k) {
    const double q = expectation(sc, [k](double x) { return std::pow(x, k); });
    CHECK(std::abs(q - law_moment(sc, k)) <= 1e-8);
  }
  for (double y : kYs) {
    const LimitLaw mp = LimitLaw::marchenko_pastur(y);
    for (unsigned k = 0; k <= 8; ++k) {
      const double q = expectation(mp, [k](double x) { return std::pow(x, k); });
      CHECK(std::abs(q - law_moment(mp, k)) <= 1e-6);
    }
  }
}

TEST_CASE("hankel check") {
  const HankelCheck h = hankel_psd_check(law_moments(LimitLaw::semicircle(), 5), 2);
  CHECK(h.ok);
  CHECK(h.min_eigenvalue > 0.0);
  Eigen::MatrixXd want(3, 3);
  want << 1, 0, 1, 0, 1, 0, 1, 0, 2;
  CHECK(h.hankel == want);
  CHECK_FALSE(hankel_psd_check(MomentSequence({1.0, 0.0, -1.0}), 1).ok);
  CHECK(hankel_psd_check(MomentSequence({1.0, 1.0, 2.0}), 1).ok);
  CHECK_THROWS(hankel_psd_check(MomentSequence({1.0, 0.0}), 1));
  CHECK_THROWS(MomentSequence({2.0, 0.0}));
  for (double y : kYs) CHECK(hankel_psd_check(law_moments(LimitLaw::marchenko_pastur(y), 13), 6).ok);
  CHECK(hankel_psd_check(law_moments(LimitLaw::semicircle(), 13), 6).ok);
}

TEST_CASE("complex points") {
  CHECK_THROWS_AS(ComplexPoint::upper(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(ComplexPoint::upper(0.0, std::nan("")), std::domain_error);
  CHECK(ComplexPoint::upper(1.0, 2.0).value() == cplx(1.0, 2.0));
}
