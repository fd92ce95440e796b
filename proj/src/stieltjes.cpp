#include "rmtlab/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rmtlab/parallel.hpp"

namespace rmtlab {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

constexpr double kSingularRcond = 1e-14;

Eigen::PartialPivLU<MatrixXcd> shifted_lu(const Eigen::MatrixXd& m, cplx z) {
  MatrixXcd shifted = m.cast<cplx>();
  shifted.diagonal().array() -= z;
  return Eigen::PartialPivLU<MatrixXcd>(shifted);
}

// tr (M - z)^{-1}; the empty matrix contributes 0.
cplx resolvent_trace_sum(const Eigen::MatrixXd& m, cplx z) {
  if (m.rows() == 0) return {0.0, 0.0};
  return shifted_lu(m, z).inverse().trace();
}

double relative_gap(cplx exact, cplx regrouped) {
  return std::abs(exact - regrouped) / std::max(1.0, std::abs(exact));
}

void finish_report(OmegaReport& rep, const std::function<cplx(const OmegaTerm&)>& denominator) {
  cplx recon{0.0, 0.0};
  for (const OmegaTerm& t : rep.terms) {
    rep.max_abs_omega = std::max(rep.max_abs_omega, std::abs(t.omega));
    rep.decomposition_residual =
        std::max(rep.decomposition_residual, relative_gap(t.omega, t.a + t.b + t.c + t.d));
    recon += 1.0 / denominator(t);
  }
  recon /= static_cast<double>(rep.terms.size());
  rep.reconstruction_residual = std::abs(rep.s_n - recon);
}

}  // namespace

cplx stieltjes_sum(const Esd& esd, cplx z) {
  if (z.imag() == 0.0) throw std::domain_error("stieltjes_sum: z lies on the real axis");
  cplx acc{0.0, 0.0};
  for (double l : esd.eigenvalues()) acc += 1.0 / (l - z);
  return acc * esd.weight();
}

cplx empirical_stieltjes(const Esd& esd, ComplexPoint z) {
  z.require_upper("empirical_stieltjes");
  return stieltjes_sum(esd, z.value());
}

cplx resolvent_trace(const SymMatrix& m, ComplexPoint z) {
  z.require_upper("resolvent_trace");
  if (m.dim() == 0) throw std::invalid_argument("resolvent_trace: empty matrix");
  const cplx tr = resolvent_trace_sum(m.dense(), z.value());
  if (!std::isfinite(tr.real()) || !std::isfinite(tr.imag())) {
    throw std::runtime_error("resolvent_trace: factorization produced non-finite values");
  }
  return tr / static_cast<double>(m.dim());
}

// ------------------------------------------------------------------- KDE

double KdeCurve::trapezoid_mass(double lo, double hi) const {
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (grid[i] >= lo && grid[i + 1] <= hi) {
      mass += 0.5 * (values[i] + values[i + 1]) * (grid[i + 1] - grid[i]);
    }
  }
  return mass;
}

KdeCurve kde(const Esd& esd, double eta, std::vector<double> grid) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("kde: eta must be positive");
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("kde: grid must be ascending");
  KdeCurve curve;
  curve.eta = eta;
  curve.values.reserve(grid.size());
  const double scale = esd.weight() / std::numbers::pi;
  for (double e : grid) {
    double acc = 0.0;
    for (double l : esd.eigenvalues()) {
      const double d = e - l;
      acc += eta / (d * d + eta * eta);
    }
    curve.values.push_back(scale * acc);
  }
  curve.grid = std::move(grid);
  return curve;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("uniform_grid: need lo <= hi and step > 0");
  }
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  if (count > 50'000'000) throw std::invalid_argument("uniform_grid: too many points");
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + static_cast<double>(i) * step;
  // Snap the last point onto hi when the step divides the range up to rounding.
  if (std::abs(grid.back() - hi) <= 1e-9 * step) grid.back() = hi;
  return grid;
}

// -------------------------------------------------------------- retrieval

std::vector<double> retrieve_interval_mass(const Transform& transform, double alpha, double beta,
                                           const std::vector<double>& etas,
                                           std::size_t max_evaluations) {
  if (!(alpha < beta)) throw std::invalid_argument("retrieve_interval_mass: need alpha < beta");
  if (etas.empty()) throw std::invalid_argument("retrieve_interval_mass: no bandwidths given");
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (!(etas[i] > 0.0)) throw std::invalid_argument("retrieve_interval_mass: bandwidths must be positive");
    if (i > 0 && !(etas[i] < etas[i - 1])) {
      throw std::invalid_argument("retrieve_interval_mass: bandwidths must be strictly descending");
    }
  }
  std::size_t budget = 0;
  std::vector<std::size_t> panels;
  for (double eta : etas) {
    const double raw = std::ceil((beta - alpha) / (eta / 10.0));
    if (raw > static_cast<double>(max_evaluations)) {
      throw std::length_error("retrieve_interval_mass: quadrature budget exceeded");
    }
    std::size_t n = std::max<std::size_t>(2, static_cast<std::size_t>(raw));
    if (n % 2 != 0) ++n;
    budget += n + 1;
    panels.push_back(n);
  }
  if (budget > max_evaluations) throw std::length_error("retrieve_interval_mass: quadrature budget exceeded");

  std::vector<double> out;
  out.reserve(etas.size());
  for (std::size_t j = 0; j < etas.size(); ++j) {
    const std::size_t n = panels[j];
    const double h = (beta - alpha) / static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      const double e = i == n ? beta : alpha + static_cast<double>(i) * h;
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      acc += w * transform(cplx(e, etas[j])).imag();
    }
    out.push_back(acc * h / 3.0 / std::numbers::pi);
  }
  return out;
}

// ------------------------------------------------------------ Schur forms

cplx schur_diag_entry(const MatrixXcd& a, std::size_t k) {
  if (a.rows() != a.cols() || a.rows() == 0) throw std::invalid_argument("schur_diag_entry: need a square matrix");
  const auto n = a.rows();
  const auto kk = static_cast<Index>(k);
  if (kk >= n) throw std::out_of_range("schur_diag_entry: index out of range");
  cplx complement = a(kk, kk);
  if (n > 1) {
    const MatrixXcd minor = delete_row_col(a, kk);
    VectorXcd r(n - 1), c(n - 1);
    for (Index i = 0, j = 0; i < n; ++i) {
      if (i == kk) continue;
      r(j) = a(kk, i);
      c(j) = a(i, kk);
      ++j;
    }
    const Eigen::PartialPivLU<MatrixXcd> lu(minor);
    if (!(lu.rcond() > kSingularRcond)) throw std::domain_error("schur_diag_entry: principal minor is singular");
    complement -= r.cwiseProduct(lu.solve(c)).sum();
  }
  if (std::abs(complement) == 0.0 || !std::isfinite(std::abs(complement))) {
    throw std::domain_error("schur_diag_entry: Schur complement vanishes");
  }
  return 1.0 / complement;
}

TraceGap minor_trace_gap(const SymMatrix& m, ComplexPoint z, std::size_t k) {
  z.require_upper("minor_trace_gap");
  if (k >= m.dim()) throw std::out_of_range("minor_trace_gap: index out of range");
  const cplx full = resolvent_trace_sum(m.dense(), z.value());
  const cplx minor = resolvent_trace_sum(m.minor(k).dense(), z.value());
  return {std::abs(full - minor), 1.0 / z.im};
}

// ------------------------------------------------------------ Omega terms

OmegaReport omega_report_wigner(const SymMatrix& w, ComplexPoint z, OmegaOptions options) {
  z.require_upper("omega_report_wigner");
  const std::size_t n = w.dim();
  if (n == 0) throw std::invalid_argument("omega_report_wigner: empty matrix");
  const double nd = static_cast<double>(n);
  const cplx zv = z.value();

  OmegaReport rep;
  rep.wigner = true;
  rep.z = z;
  rep.dimension = n;
  rep.s_n = resolvent_trace(w, z);
  rep.d_bound = 1.0 / (nd * z.im);
  rep.r_bound = std::sqrt(nd) / z.im;
  rep.has_r_terms = options.r_terms;
  rep.terms.resize(n);

  const double root_n = std::sqrt(nd);
  const Eigen::MatrixXd& dense = w.dense();
  parallel_for(n, [&](std::size_t k) {
    const auto kk = static_cast<Index>(k);
    OmegaTerm& t = rep.terms[k];
    t.a = dense(kk, kk);
    if (n == 1) {
      t.b = t.c = 0.0;
      t.d = rep.s_n;
      t.omega = dense(kk, kk) + rep.s_n;
      return;
    }
    Eigen::VectorXd x(static_cast<Index>(n - 1));
    for (Index i = 0, j = 0; i < static_cast<Index>(n); ++i) {
      if (i != kk) x(j++) = root_n * dense(i, kk);
    }
    const auto lu = shifted_lu(delete_row_col(dense, kk), zv);
    const MatrixXcd g = lu.inverse();
    const VectorXcd xc = x.cast<cplx>();
    const cplx quad = xc.transpose() * (g * xc);
    cplx diag_weighted{0.0, 0.0}, diag_centered{0.0, 0.0};
    for (Index i = 0; i < x.size(); ++i) {
      diag_weighted += x(i) * x(i) * g(i, i);
      diag_centered += (x(i) * x(i) - 1.0) * g(i, i);
    }
    const cplx tr = g.trace();
    t.omega = dense(kk, kk) + rep.s_n - quad / nd;
    t.b = -(quad - diag_weighted) / nd;
    t.c = -diag_centered / nd;
    t.d = -tr / nd + rep.s_n;
    if (options.r_terms) {
      const double diag2 = g.diagonal().squaredNorm();
      t.r_prime = std::sqrt(diag2);
      t.r = std::sqrt(std::max(0.0, g.squaredNorm() - diag2));
    }
  });

  finish_report(rep, [&](const OmegaTerm& t) { return -zv - rep.s_n + t.omega; });
  return rep;
}

OmegaReport omega_report_mp(const RectMatrix& x, ComplexPoint z, OmegaOptions options) {
  z.require_upper("omega_report_mp");
  const std::size_t p = x.rows();
  const std::size_t n = x.cols();
  if (p == 0 || n == 0) throw std::invalid_argument("omega_report_mp: empty matrix");
  const double nd = static_cast<double>(n);
  const double pd = static_cast<double>(p);
  const cplx zv = z.value();
  const Eigen::MatrixXd& data = x.dense();

  OmegaReport rep;
  rep.wigner = false;
  rep.z = z;
  rep.dimension = p;
  rep.y_n = pd / nd;
  const Eigen::MatrixXd v = data * data.transpose() / nd;
  rep.s_n = resolvent_trace(SymMatrix::from_dense(v), z);
  rep.d_bound = 1.0 / nd + std::abs(zv) / (nd * z.im);
  rep.r_bound = nd * std::sqrt(pd) * (1.0 + std::abs(zv) / z.im);
  rep.has_r_terms = options.r_terms;
  rep.terms.resize(p);

  const double y = rep.y_n;
  const cplx shift = y + y * zv * rep.s_n;
  parallel_for(p, [&](std::size_t k) {
    const auto kk = static_cast<Index>(k);
    OmegaTerm& t = rep.terms[k];
    const Eigen::VectorXd alpha = data.row(kk).transpose();
    const double norm2 = alpha.squaredNorm();
    t.a = norm2 / nd - 1.0;
    if (p == 1) {
      // No other rows: the kernel F is zero.
      t.b = t.c = 0.0;
      t.d = shift;
      t.omega = t.a + shift;
      return;
    }
    Eigen::MatrixXd rest(static_cast<Index>(p - 1), static_cast<Index>(n));
    for (Index i = 0, j = 0; i < static_cast<Index>(p); ++i) {
      if (i != kk) rest.row(j++) = data.row(i);
    }
    const Eigen::MatrixXd gram = rest * rest.transpose() / nd;
    const auto lu = shifted_lu(gram, zv);
    const MatrixXcd rest_c = rest.cast<cplx>();
    const MatrixXcd y_mat = lu.solve(rest_c);  // G X_k
    const VectorXcd u = (rest * alpha).cast<cplx>();
    const cplx quad = u.transpose() * lu.solve(u);  // alpha^T F alpha

    cplx diag_weighted{0.0, 0.0}, diag_centered{0.0, 0.0}, tr{0.0, 0.0};
    double diag2 = 0.0;
    for (Index i = 0; i < static_cast<Index>(n); ++i) {
      const cplx f_ii = rest_c.col(i).transpose() * y_mat.col(i);
      tr += f_ii;
      diag_weighted += alpha(i) * alpha(i) * f_ii;
      diag_centered += (alpha(i) * alpha(i) - 1.0) * f_ii;
      diag2 += std::norm(f_ii);
    }
    const double n2 = nd * nd;
    t.omega = t.a - quad / n2 + shift;
    t.b = -(quad - diag_weighted) / n2;
    t.c = -diag_centered / n2;
    t.d = -tr / n2 + shift;
    if (options.r_terms) {
      // ||F||_F^2 = sum_j y_j^H K y_j with K = X_k X_k^T and y_j = G X_k e_j.
      const MatrixXcd ky = (gram * nd).cast<cplx>() * y_mat;
      const double frob2 = (y_mat.conjugate().cwiseProduct(ky)).sum().real();
      t.r_prime = std::sqrt(diag2);
      t.r = std::sqrt(std::max(0.0, frob2 - diag2));
    }
  });

  finish_report(rep, [&](const OmegaTerm& t) { return 1.0 - zv - shift + t.omega; });
  return rep;
}

}  // namespace rmtlab
