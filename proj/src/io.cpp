#include "rmtlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rmtlab {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_esd_csv(std::ostream& out, const Esd& esd) {
  out << "lambda\n";
  for (double l : esd.eigenvalues()) out << format_double(l) << '\n';
}

void write_kde_csv(std::ostream& out, const KdeCurve& curve, const std::optional<LimitLaw>& law) {
  out << "E,density";
  if (law) out << (law->kind() == LawKind::Semicircle ? ",f_sigma" : ",f_law");
  out << '\n';
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << format_double(curve.grid[i]) << ',' << format_double(curve.values[i]);
    if (law) out << ',' << format_double(density(*law, curve.grid[i]));
    out << '\n';
  }
}

namespace {

json pair(cplx v) { return json::array({v.real(), v.imag()}); }

json point(const ComplexPoint& z) { return {{"re", z.re}, {"im", z.im}}; }

ComplexPoint point_from(const json& j) {
  if (j.is_array() && j.size() == 2) return ComplexPoint::upper(j[0].get<double>(), j[1].get<double>());
  if (j.is_object()) return ComplexPoint::upper(j.at("re").get<double>(), j.at("im").get<double>());
  throw std::invalid_argument("config: a complex point is {\"re\":..,\"im\":..} or [re, im]");
}

}  // namespace

json to_json(const OmegaReport& r) {
  json terms = json::array();
  for (std::size_t k = 0; k < r.terms.size(); ++k) {
    const OmegaTerm& t = r.terms[k];
    json item{{"k", k},           {"omega_re", t.omega.real()}, {"omega_im", t.omega.imag()},
              {"a", pair(t.a)},   {"b", pair(t.b)},             {"c", pair(t.c)},
              {"d", pair(t.d)}};
    if (r.has_r_terms) {
      item["r"] = t.r;
      item["r_prime"] = t.r_prime;
    }
    terms.push_back(std::move(item));
  }
  json out{{"ensemble", r.wigner ? "wigner" : "mp"},
           {"z", point(r.z)},
           {"dimension", r.dimension},
           {"s_n", pair(r.s_n)},
           {"terms", std::move(terms)},
           {"max_abs_omega", r.max_abs_omega},
           {"reconstruction_residual", r.reconstruction_residual},
           {"decomposition_residual", r.decomposition_residual},
           {"d_bound", r.d_bound}};
  if (!r.wigner) out["y_n"] = r.y_n;
  if (r.has_r_terms) out["r_bound"] = r.r_bound;
  return out;
}

json to_json(const ExperimentConfig& c) {
  json zs = json::array();
  for (const ComplexPoint& z : c.z_grid) zs.push_back(point(z));
  return {{"ensemble", std::string(to_string(c.kind))},
          {"dist", std::string(to_string(c.dist))},
          {"sizes", c.sizes},
          {"ratio", c.ratio},
          {"trials", c.trials},
          {"base_seed", c.base_seed},
          {"max_moment", c.max_moment},
          {"z_grid", std::move(zs)},
          {"kde_gamma", c.kde_gamma},
          {"omega", c.omega},
          {"omega_z", point(c.omega_z)}};
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
  static const std::set<std::string> known{"ensemble", "dist",      "sizes", "ratio", "trials", "base_seed",
                                           "max_moment", "z_grid", "kde_gamma", "omega", "omega_z"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.contains(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  ExperimentConfig c;
  try {
    if (j.contains("ensemble")) c.kind = parse_ensemble(j["ensemble"].get<std::string>());
    if (j.contains("dist")) c.dist = parse_distribution(j["dist"].get<std::string>());
    if (j.contains("sizes")) c.sizes = j["sizes"].get<std::vector<std::size_t>>();
    if (j.contains("ratio")) c.ratio = j["ratio"].get<double>();
    if (j.contains("trials")) c.trials = j["trials"].get<unsigned>();
    if (j.contains("base_seed")) c.base_seed = j["base_seed"].get<std::uint64_t>();
    if (j.contains("max_moment")) c.max_moment = j["max_moment"].get<unsigned>();
    if (j.contains("z_grid")) {
      c.z_grid.clear();
      for (const json& z : j["z_grid"]) c.z_grid.push_back(point_from(z));
    }
    if (j.contains("kde_gamma")) c.kde_gamma = j["kde_gamma"].get<double>();
    if (j.contains("omega")) c.omega = j["omega"].get<bool>();
    if (j.contains("omega_z")) c.omega_z = point_from(j["omega_z"]);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

json to_json(const ConvergenceReport& r) {
  json trials = json::array();
  for (const TrialRecord& t : r.trials) {
    json item{{"size_index", t.size_index},
              {"n", t.n},
              {"trial", t.trial},
              {"seed", t.seed},
              {"kolmogorov", t.kolmogorov},
              {"dm", t.dm},
              {"moment_errors", t.moment_errors},
              {"transform_errors", t.transform_errors},
              {"kde_eta", t.kde_eta},
              {"kde_sup_error", t.kde_sup_error}};
    if (t.p > 0) item["p"] = t.p;
    if (t.max_abs_omega) item["max_abs_omega"] = *t.max_abs_omega;
    trials.push_back(std::move(item));
  }
  json sizes = json::array();
  for (const SizeSummary& s : r.sizes) {
    json item{{"n", s.n},
              {"law", s.law},
              {"median_kolmogorov", s.median_kolmogorov},
              {"median_dm", s.median_dm},
              {"median_moment_errors", s.median_moment_errors},
              {"median_transform_errors", s.median_transform_errors},
              {"median_kde_sup_error", s.median_kde_sup_error}};
    if (s.p > 0) item["p"] = s.p;
    if (s.median_max_abs_omega) item["median_max_abs_omega"] = *s.median_max_abs_omega;
    sizes.push_back(std::move(item));
  }
  return {{"config", to_json(r.config)},
          {"stream", std::string(kStreamVersion)},
          {"trials", std::move(trials)},
          {"sizes", std::move(sizes)}};
}

json to_json(const std::vector<KdeFigureSeries>& figure) {
  json out = json::array();
  for (const KdeFigureSeries& s : figure) {
    out.push_back({{"eta", s.eta},
                   {"label", s.label},
                   {"mean_sup_distance", s.mean_sup_distance},
                   {"mean_value_at_zero", s.mean_value_at_zero},
                   {"mean_mass", s.mean_mass},
                   {"sup_distances", s.sup_distances}});
  }
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace rmtlab
