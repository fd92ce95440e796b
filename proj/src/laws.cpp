#include "rmtlab/laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace rmtlab {

namespace {

constexpr double kInvTwoPi = 0.5 / std::numbers::pi;

// Angle substitution for the continuous part on [a, b]:
//   x(t) = a + (b - a) sin^2(t/2),   t in [0, pi],
//   f(x) dx = weight(t) dt   with weight smooth on [0, pi].
struct AngleMap {
  double a;
  double b;
  double x(double t) const {
    const double s = std::sin(0.5 * t);
    return a + (b - a) * s * s;
  }
  double t(double x) const {
    const double r = std::clamp((x - a) / (b - a), 0.0, 1.0);
    return 2.0 * std::asin(std::sqrt(r));
  }
};

AngleMap angle_map(const LimitLaw& law) { return {law.lower_edge(), law.upper_edge()}; }

double angle_weight(const LimitLaw& law, const AngleMap& map, double t) {
  const double half = 0.5 * (map.b - map.a);
  const double s = std::sin(t);
  const double root2 = half * half * s * s;  // (b - x)(x - a)
  if (law.kind() == LawKind::Semicircle) return kInvTwoPi * root2;
  const double x = map.x(t);
  if (x <= 0.0) return 0.0;
  return kInvTwoPi * root2 / (x * law.ratio());
}

template <typename Value, typename F>
Value integrate_angle(F&& g, double t0, double t1) {
  if (t1 <= t0) return Value{};
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 31>::integrate(g, t0, t1, 20, 1e-14);
}

template <typename Value, typename F>
Value expectation_impl(const LimitLaw& law, F&& f, std::span<const double> breakpoints) {
  const AngleMap map = angle_map(law);
  std::vector<double> cuts{0.0, std::numbers::pi};
  for (double bp : breakpoints) {
    if (bp > map.a && bp < map.b) cuts.push_back(map.t(bp));
  }
  std::sort(cuts.begin(), cuts.end());
  auto integrand = [&](double t) -> Value { return f(map.x(t)) * angle_weight(law, map, t); };
  Value total{};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate_angle<Value>(integrand, cuts[i], cuts[i + 1]);
  }
  const double atom = atom_mass(law);
  if (atom > 0.0) total += atom * f(0.0);
  return total;
}

}  // namespace

ComplexPoint ComplexPoint::upper(double re, double im) {
  ComplexPoint z{re, im};
  z.require_upper("ComplexPoint");
  return z;
}

void ComplexPoint::require_upper(const char* where) const {
  if (!(im > 0.0) || !std::isfinite(re) || !std::isfinite(im)) {
    throw std::domain_error(std::string(where) + ": requires Im z > 0 (got " + std::to_string(re) +
                            " + " + std::to_string(im) + "i)");
  }
}

LimitLaw LimitLaw::marchenko_pastur(double y) {
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw std::invalid_argument("LimitLaw: MP ratio must be positive and finite");
  }
  return LimitLaw(LawKind::MarchenkoPastur, y);
}

double LimitLaw::lower_edge() const {
  if (kind_ == LawKind::Semicircle) return -2.0;
  const double r = 1.0 - std::sqrt(y_);
  return r * r;
}

double LimitLaw::upper_edge() const {
  if (kind_ == LawKind::Semicircle) return 2.0;
  const double r = 1.0 + std::sqrt(y_);
  return r * r;
}

std::string LimitLaw::name() const {
  if (kind_ == LawKind::Semicircle) return "semicircle";
  return "mp(y=" + std::to_string(y_) + ")";
}

double density(const LimitLaw& law, double x) {
  const double a = law.lower_edge();
  const double b = law.upper_edge();
  if (!(x > a && x < b)) return 0.0;
  const double root = std::sqrt((b - x) * (x - a));
  if (law.kind() == LawKind::Semicircle) return kInvTwoPi * root;
  return kInvTwoPi * root / (x * law.ratio());
}

double atom_mass(const LimitLaw& law) {
  if (law.kind() == LawKind::MarchenkoPastur && law.ratio() > 1.0) return 1.0 - 1.0 / law.ratio();
  return 0.0;
}

double law_moment(const LimitLaw& law, unsigned k) {
  if (k == 0) return 1.0;
  if (law.kind() == LawKind::Semicircle) {
    if (k % 2 == 1) return 0.0;
    return to_double(catalan_u128(k / 2));
  }
  const double y = law.ratio();
  double sum = 0.0;
  double ypow = 1.0;
  for (unsigned r = 0; r < k; ++r) {
    sum += ypow * to_double(narayana_mp_u128(k, r));
    ypow *= y;
  }
  return sum;
}

cplx principal_sqrt_upper(cplx w) {
  cplx s = std::sqrt(w);  // principal branch: Re s >= 0
  if (s.imag() < 0.0) s = -s;
  if (s.imag() == 0.0 && s.real() < 0.0) s = -s;
  return s;
}

namespace {

struct Roots {
  cplx plus;
  cplx minus;
};

// Both roots of the self-consistent quadratic; the one that suffers
// cancellation is recovered from the root product (1 for the semicircle,
// 1/(y z) for MP).
Roots sce_roots(const LimitLaw& law, cplx z) {
  if (law.kind() == LawKind::Semicircle) {
    const cplx s = principal_sqrt_upper(z * z - 4.0);
    cplx plus = 0.5 * (-z + s);
    cplx minus = 0.5 * (-z - s);
    if (std::abs(plus) < std::abs(minus)) {
      plus = 1.0 / minus;
    } else {
      minus = 1.0 / plus;
    }
    return {plus, minus};
  }
  const double y = law.ratio();
  const cplx b = 1.0 - y - z;
  const cplx s = principal_sqrt_upper((z - 1.0 - y) * (z - 1.0 - y) - 4.0 * y);
  const cplx den = 2.0 * y * z;
  cplx plus = (b + s) / den;
  cplx minus = (b - s) / den;
  if (std::abs(b + s) < std::abs(b - s)) {
    plus = 1.0 / (y * z * minus);
  } else {
    minus = 1.0 / (y * z * plus);
  }
  return {plus, minus};
}

}  // namespace

cplx law_stieltjes(const LimitLaw& law, ComplexPoint z) {
  z.require_upper("law_stieltjes");
  return sce_roots(law, z.value()).plus;
}

cplx rejected_branch(const LimitLaw& law, ComplexPoint z) {
  z.require_upper("rejected_branch");
  return sce_roots(law, z.value()).minus;
}

cplx sce_denominator(const LimitLaw& law, cplx m, ComplexPoint z) {
  const cplx zz = z.value();
  if (law.kind() == LawKind::Semicircle) return -zz - m;
  const double y = law.ratio();
  return 1.0 - zz - y - y * zz * m;
}

cplx sce_residual(const LimitLaw& law, cplx m, ComplexPoint z) {
  const cplx den = sce_denominator(law, m, z);
  if (std::abs(den) < 1e-14) {
    throw std::domain_error("sce_residual: degenerate denominator");
  }
  return m - 1.0 / den;
}

double cdf(const LimitLaw& law, double x) {
  if (std::isnan(x)) throw std::invalid_argument("cdf: NaN argument");
  const double atom = x >= 0.0 ? atom_mass(law) : 0.0;
  const AngleMap map = angle_map(law);
  if (x <= map.a) return atom;
  if (x >= map.b) return 1.0;
  auto w = [&](double t) { return angle_weight(law, map, t); };
  const double cont = integrate_angle<double>(w, 0.0, map.t(x));
  return std::clamp(atom + cont, 0.0, 1.0);
}

double cdf_left(const LimitLaw& law, double x) {
  const double f = cdf(law, x);
  if (x == 0.0) return std::max(0.0, f - atom_mass(law));
  return f;
}

double expectation(const LimitLaw& law, const std::function<double(double)>& f,
                   std::span<const double> breakpoints) {
  return expectation_impl<double>(law, f, breakpoints);
}

cplx expectation_complex(const LimitLaw& law, const std::function<cplx(double)>& f,
                         std::span<const double> breakpoints) {
  auto re = [&](double x) { return f(x).real(); };
  auto im = [&](double x) { return f(x).imag(); };
  return {expectation_impl<double>(law, re, breakpoints),
          expectation_impl<double>(law, im, breakpoints)};
}

MomentSequence::MomentSequence(std::vector<double> values) : m(std::move(values)) {
  if (m.empty()) throw std::invalid_argument("MomentSequence: empty");
  if (std::abs(m[0] - 1.0) > 1e-12) {
    throw std::invalid_argument("MomentSequence: m[0] must be 1");
  }
}

MomentSequence law_moments(const LimitLaw& law, unsigned count) {
  std::vector<double> m(count == 0 ? 1 : count);
  for (unsigned k = 0; k < m.size(); ++k) m[k] = law_moment(law, k);
  return MomentSequence(std::move(m));
}

HankelCheck hankel_psd_check(const MomentSequence& moments, unsigned N) {
  if (moments.m.size() < 2 * static_cast<std::size_t>(N) + 1) {
    throw std::invalid_argument("hankel_psd_check: need " + std::to_string(2 * N + 1) +
                                " moments, have " + std::to_string(moments.m.size()));
  }
  const auto dim = static_cast<Eigen::Index>(N) + 1;
  Eigen::MatrixXd h(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) h(i, j) = moments.m[static_cast<std::size_t>(i + j)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double norm = ev.cwiseAbs().maxCoeff();
  HankelCheck out;
  out.min_eigenvalue = ev.minCoeff();
  out.ok = out.min_eigenvalue >= -1e-9 * (1.0 + norm);
  out.hankel = std::move(h);
  return out;
}

}  // namespace rmtlab
