#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rmtlab/combinatorics.hpp"
#include "rmtlab/convergence.hpp"
#include "rmtlab/ensemble.hpp"
#include "rmtlab/io.hpp"
#include "rmtlab/laws.hpp"
#include "rmtlab/spectra.hpp"
#include "rmtlab/stieltjes.hpp"

namespace py = pybind11;
using namespace rmtlab;

namespace {

ComplexPoint upper_point(std::complex<double> z) { return ComplexPoint::upper(z.real(), z.imag()); }

py::object fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(r.numerator(), r.denominator());
}

py::dict omega_dict(const OmegaReport& rep) {
  const auto n = static_cast<Eigen::Index>(rep.terms.size());
  Eigen::VectorXcd omega(n), a(n), b(n), c(n), d(n);
  Eigen::VectorXd r(n), r_prime(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const OmegaTerm& t = rep.terms[static_cast<std::size_t>(k)];
    omega(k) = t.omega;
    a(k) = t.a;
    b(k) = t.b;
    c(k) = t.c;
    d(k) = t.d;
    r(k) = t.r;
    r_prime(k) = t.r_prime;
  }
  py::dict out;
  out["s_n"] = rep.s_n;
  out["omega"] = omega;
  out["a"] = a;
  out["b"] = b;
  out["c"] = c;
  out["d"] = d;
  if (rep.has_r_terms) {
    out["r"] = r;
    out["r_prime"] = r_prime;
    out["r_bound"] = rep.r_bound;
  }
  out["max_abs_omega"] = rep.max_abs_omega;
  out["reconstruction_residual"] = rep.reconstruction_residual;
  out["decomposition_residual"] = rep.decomposition_residual;
  out["d_bound"] = rep.d_bound;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Random-matrix spectral-law laboratory (compiled core)";
  m.attr("STREAM_VERSION") = std::string(kStreamVersion);

  // ensemble
  m.def(
      "sample_wigner",
      [](std::size_t n, const std::string& dist, std::uint64_t seed) {
        return sample_wigner(EnsembleSpec::wigner(n, parse_distribution(dist), seed)).dense();
      },
      py::arg("n"), py::arg("dist") = "rademacher", py::arg("seed") = 0);
  m.def(
      "sample_mp",
      [](std::size_t p, std::size_t n, const std::string& dist, std::uint64_t seed) {
        MpSample s = sample_mp(EnsembleSpec::mp(p, n, parse_distribution(dist), seed));
        return py::make_tuple(s.x.dense(), s.v.dense());
      },
      py::arg("p"), py::arg("n"), py::arg("dist") = "rademacher", py::arg("seed") = 0);
  m.def(
      "dist_moment", [](const std::string& dist, unsigned q) { return dist_moment(parse_distribution(dist), q); },
      py::arg("dist"), py::arg("q"));

  // spectra
  m.def("eigenvalues_sym", py::overload_cast<const Eigen::MatrixXd&>(&eigenvalues_sym), py::arg("m"));
  m.def(
      "esd_moment", [](std::vector<double> eigs, unsigned k) { return esd_moment(Esd(std::move(eigs)), k); },
      py::arg("eigenvalues"), py::arg("k"));
  m.def(
      "trace_moment", [](const Eigen::MatrixXd& a, unsigned k) { return trace_moment(SymMatrix::from_dense(a), k); },
      py::arg("m"), py::arg("k"));
  m.def(
      "hoffman_wielandt",
      [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
        const HoffmanWielandt hw = hoffman_wielandt_check(SymMatrix::from_dense(x), SymMatrix::from_dense(y));
        return py::make_tuple(hw.lhs, hw.rhs);
      },
      py::arg("x"), py::arg("y"));

  // laws
  py::class_<LimitLaw>(m, "LimitLaw")
      .def_static("semicircle", &LimitLaw::semicircle)
      .def_static("marchenko_pastur", &LimitLaw::marchenko_pastur, py::arg("y"))
      .def_property_readonly("name", &LimitLaw::name)
      .def_property_readonly("ratio", &LimitLaw::ratio)
      .def_property_readonly("support", [](const LimitLaw& l) { return py::make_tuple(l.lower_edge(), l.upper_edge()); })
      .def("density", [](const LimitLaw& l, double x) { return density(l, x); }, py::arg("x"))
      .def("cdf", [](const LimitLaw& l, double x) { return cdf(l, x); }, py::arg("x"))
      .def("atom_mass", [](const LimitLaw& l) { return atom_mass(l); })
      .def("moment", [](const LimitLaw& l, unsigned k) { return law_moment(l, k); }, py::arg("k"))
      .def("stieltjes", [](const LimitLaw& l, std::complex<double> z) { return law_stieltjes(l, upper_point(z)); },
           py::arg("z"))
      .def("sce_residual",
           [](const LimitLaw& l, std::complex<double> mv, std::complex<double> z) {
             return sce_residual(l, mv, upper_point(z));
           },
           py::arg("m"), py::arg("z"))
      .def("__repr__", [](const LimitLaw& l) { return "LimitLaw(" + l.name() + ")"; });
  m.def("principal_sqrt_upper", &principal_sqrt_upper, py::arg("w"));
  m.def(
      "hankel_psd_check",
      [](std::vector<double> moments, unsigned big_n) {
        const HankelCheck h = hankel_psd_check(MomentSequence(std::move(moments)), big_n);
        return py::make_tuple(h.ok, h.min_eigenvalue);
      },
      py::arg("moments"), py::arg("N"));
  m.def(
      "kolmogorov_distance",
      [](std::vector<double> eigs, const LimitLaw& law) { return kolmogorov_distance(Esd(std::move(eigs)), law); },
      py::arg("eigenvalues"), py::arg("law"));

  // combinatorics
  m.def("catalan", &catalan, py::arg("k"));
  m.def("narayana_mp", &narayana_mp, py::arg("k"), py::arg("r"));
  m.def("binomial", &binomial, py::arg("n"), py::arg("k"));
  m.def("falling_factorial", &falling_factorial, py::arg("n"), py::arg("l"));
  m.def(
      "coloring_of", [](const std::vector<int>& t) { return coloring_of(t).c; }, py::arg("t"));
  m.def(
      "count_matching",
      [](std::vector<int> c, std::uint64_t n) { return count_matching(Coloring::checked(std::move(c)), n); },
      py::arg("c"), py::arg("n"));
  m.def(
      "profile_of_wigner", [](const std::vector<int>& t) { return profile_of_wigner(t).rho; }, py::arg("t"));
  m.def(
      "profile_of_mp", [](const std::vector<int>& s, const std::vector<int>& t) { return profile_of_mp(s, t).rho; },
      py::arg("s"), py::arg("t"));
  m.def(
      "enumerate_wigner_pds",
      [](unsigned two_k) {
        std::vector<std::vector<int>> out;
        for (auto& d : enumerate_wigner_pds(two_k)) out.push_back(std::move(d.steps));
        return out;
      },
      py::arg("two_k"));
  m.def(
      "enumerate_mp_pds",
      [](unsigned k, unsigned r) {
        std::vector<std::vector<int>> out;
        for (auto& d : enumerate_mp_pds(k, r)) out.push_back(std::move(d.steps));
        return out;
      },
      py::arg("k"), py::arg("r"));
  m.def("count_tn_tree_cycles", &count_tn_tree_cycles, py::arg("n"), py::arg("k"));
  m.def("brute_force_tn_tree_cycles", &brute_force_tn_tree_cycles, py::arg("n"), py::arg("k"));
  m.def("count_tpn_mp", &count_tpn_mp, py::arg("p"), py::arg("n"), py::arg("k"), py::arg("r"));
  m.def("brute_force_tpn_mp", &brute_force_tpn_mp, py::arg("p"), py::arg("n"), py::arg("k"), py::arg("r"));
  m.def(
      "exact_expected_moment_pm1",
      [](const std::string& kind, unsigned n, unsigned k, unsigned p) {
        if (kind == "wigner") return fraction(exact_expected_moment_pm1(MomentEnsemble::Wigner(n), k));
        if (kind == "mp") {
          if (p == 0) throw std::invalid_argument("exact_expected_moment_pm1: mp needs p >= 1");
          return fraction(exact_expected_moment_pm1(MomentEnsemble::MP(p, n), k));
        }
        throw std::invalid_argument("exact_expected_moment_pm1: kind must be 'wigner' or 'mp'");
      },
      py::arg("kind"), py::arg("n"), py::arg("k"), py::arg("p") = 0);

  // stieltjes
  m.def(
      "empirical_stieltjes",
      [](std::vector<double> eigs, std::complex<double> z) {
        return empirical_stieltjes(Esd(std::move(eigs)), upper_point(z));
      },
      py::arg("eigenvalues"), py::arg("z"));
  m.def(
      "resolvent_trace",
      [](const Eigen::MatrixXd& a, std::complex<double> z) {
        return resolvent_trace(SymMatrix::from_dense(a), upper_point(z));
      },
      py::arg("m"), py::arg("z"));
  m.def(
      "kde",
      [](std::vector<double> eigs, double eta, std::vector<double> grid) {
        KdeCurve c = kde(Esd(std::move(eigs)), eta, std::move(grid));
        return c.values;
      },
      py::arg("eigenvalues"), py::arg("eta"), py::arg("grid"));
  m.def("retrieve_interval_mass",
        [](const std::function<std::complex<double>(std::complex<double>)>& f, double alpha, double beta,
           const std::vector<double>& etas) { return retrieve_interval_mass(f, alpha, beta, etas); },
        py::arg("transform"), py::arg("alpha"), py::arg("beta"), py::arg("etas"));
  m.def("schur_diag_entry", &schur_diag_entry, py::arg("a"), py::arg("k"));
  m.def(
      "minor_trace_gap",
      [](const Eigen::MatrixXd& a, std::complex<double> z, std::size_t k) {
        const TraceGap g = minor_trace_gap(SymMatrix::from_dense(a), upper_point(z), k);
        return py::make_tuple(g.gap, g.bound);
      },
      py::arg("m"), py::arg("z"), py::arg("k"));
  m.def(
      "omega_report_wigner",
      [](const Eigen::MatrixXd& w, std::complex<double> z) {
        return omega_dict(omega_report_wigner(SymMatrix::from_dense(w), upper_point(z)));
      },
      py::arg("w"), py::arg("z") = std::complex<double>(0.0, 1.0));
  m.def(
      "omega_report_mp",
      [](const Eigen::MatrixXd& x, std::complex<double> z) {
        return omega_dict(omega_report_mp(RectMatrix(x), upper_point(z)));
      },
      py::arg("x"), py::arg("z") = std::complex<double>(0.0, 1.0));

  // convergence
  m.def("cutoff_eval", &cutoff_eval, py::arg("lower"), py::arg("upper"), py::arg("x"));
  m.def(
      "_run_law_experiment_json",
      [](const std::string& config_json) {
        const ExperimentConfig cfg = config_from_json(nlohmann::json::parse(config_json));
        py::gil_scoped_release release;
        return to_json(run_law_experiment(cfg)).dump();
      },
      py::arg("config_json"));
}
