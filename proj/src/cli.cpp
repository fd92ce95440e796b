#include "rmtlab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rmtlab/combinatorics.hpp"
#include "rmtlab/convergence.hpp"
#include "rmtlab/ensemble.hpp"
#include "rmtlab/io.hpp"
#include "rmtlab/spectra.hpp"
#include "rmtlab/stieltjes.hpp"

namespace rmtlab {

namespace {

using nlohmann::json;

// Bad flag values discovered after CLI11 parsing; mapped to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads `--config-file` JSON: top-level keys are global flags, nested objects
// are subcommand sections, e.g. {"kde": {"eta": 0.01, "n": 200}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    return dump(app, default_also).dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::parse_error& e) {
      throw CLI::ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConfigError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void collect(const json& obj, const std::vector<std::string>& parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        std::vector<std::string> deeper = parents;
        deeper.push_back(key);
        collect(value, deeper, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const json& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }

  static json dump(const CLI::App* app, bool default_also) {
    json out = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
      const std::string& name = opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto& res = opt->results();
        out[name] = res.size() == 1 ? json(res.front()) : json(res);
      } else if (default_also && !opt->get_default_str().empty()) {
        out[name] = opt->get_default_str();
      }
    }
    for (const CLI::App* sub : app->get_subcommands({})) {
      json section = dump(sub, default_also);
      if (!section.empty()) out[sub->get_name()] = std::move(section);
    }
    return out;
  }
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
  } else {
    write_text_file(path, text);
  }
}

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(what + ": '" + s + "' is not a finite number");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) throw UsageError("--grid: expected lo:hi:step, got '" + spec + "'");
  const double lo = parse_number(parts[0], "--grid");
  const double hi = parse_number(parts[1], "--grid");
  const double step = parse_number(parts[2], "--grid");
  if (!(step > 0.0) || !(hi >= lo)) throw UsageError("--grid: need lo <= hi and step > 0");
  try {
    return uniform_grid(lo, hi, step);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--grid: ") + e.what());
  }
}

ComplexPoint parse_z(const std::string& spec) {
  const auto parts = split(spec, ',');
  if (parts.size() != 2) throw UsageError("--z: expected E,ETA, got '" + spec + "'");
  const double e = parse_number(parts[0], "--z");
  const double eta = parse_number(parts[1], "--z");
  if (!(eta > 0.0)) throw UsageError("--z: ETA must be positive");
  return {e, eta};
}

// Flags shared by the commands that sample one matrix.
struct EnsembleFlags {
  std::string ensemble = "wigner";
  std::size_t n = 100;
  std::optional<std::size_t> p;
  std::optional<double> ratio;
  std::string dist = "rademacher";
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd, std::size_t default_n) {
    n = default_n;
    cmd->add_option("--ensemble", ensemble, "wigner or mp")
        ->check(CLI::IsMember({"wigner", "mp"}))
        ->capture_default_str();
    cmd->add_option("--n", n, "dimension (Wigner) or number of samples (MP)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* p_opt = cmd->add_option("--p", p, "MP dimension (rows)")->check(CLI::PositiveNumber);
    auto* r_opt = cmd->add_option("--ratio", ratio, "MP ratio y, p = max(1, round(y n)); default 0.5")
                      ->check(CLI::PositiveNumber);
    p_opt->excludes(r_opt);
    cmd->add_option("--dist", dist, "rademacher, uniform or gaussian")
        ->check(CLI::IsMember({"rademacher", "uniform", "gaussian"}))
        ->capture_default_str();
    cmd->add_option("--seed", seed, "64-bit seed")->capture_default_str();
  }

  EnsembleSpec spec() const {
    const EntryDistribution d = parse_distribution(dist);
    if (ensemble == "wigner") {
      if (p || ratio) throw UsageError("--p/--ratio only apply to --ensemble mp");
      return EnsembleSpec::wigner(n, d, seed);
    }
    const std::size_t rows = p ? *p : mp_rows(ratio.value_or(0.5), n);
    return EnsembleSpec::mp(rows, n, d, seed);
  }
};

// ------------------------------------------------------------- verify-counts

struct CountRow {
  std::string label;
  std::uint64_t formula;
  std::uint64_t brute;
  bool match;
};

std::vector<CountRow> count_table(unsigned kmax, unsigned nmax) {
  std::vector<CountRow> rows;
  auto add = [&](std::string label, std::uint64_t formula, std::uint64_t brute, bool match) {
    rows.push_back({std::move(label), formula, brute, match});
  };
  for (unsigned k = 1; k <= kmax; ++k) {
    const auto found = enumerate_wigner_pds(2 * k).size();
    add("W(" + std::to_string(2 * k) + ")", catalan(k), found, found == catalan(k));
  }
  for (unsigned k = 1; k <= kmax; ++k) {
    for (unsigned r = 0; r < k; ++r) {
      const auto found = enumerate_mp_pds(k, r).size();
      const auto formula = narayana_mp(k, r);
      add("M(" + std::to_string(k) + "," + std::to_string(r) + ")", formula, found, found == formula);
    }
  }
  // Coloring classes, aggregated per number of colors l; a row matches only
  // when every single class matches (n)_l.
  for (unsigned k = 1; k <= kmax; ++k) {
    const auto colorings = enumerate_colorings(k);
    for (unsigned n = 1; n <= nmax; ++n) {
      const auto sizes = coloring_class_sizes(k, n);
      for (int l = 1; l <= static_cast<int>(k); ++l) {
        std::uint64_t formula = 0, brute = 0;
        bool match = true;
        for (const Coloring& c : colorings) {
          if (c.colors() != l) continue;
          const std::uint64_t want = count_matching(c, n);
          const auto it = sizes.find(c);
          const std::uint64_t got = it == sizes.end() ? 0 : it->second;
          formula += want;
          brute += got;
          match = match && want == got;
        }
        add("C(k=" + std::to_string(k) + ",n=" + std::to_string(n) + ",l=" + std::to_string(l) + ")", formula,
            brute, match);
      }
    }
  }
  for (unsigned k = 2; k <= kmax + 1; k += 2) {
    for (unsigned n = 1; n <= nmax; ++n) {
      const auto formula = count_tn_tree_cycles(n, k);
      const auto brute = brute_force_tn_tree_cycles(n, k);
      add("T_W(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")", formula, brute, formula == brute);
    }
  }
  for (unsigned k = 1; k <= std::min(kmax, 6u); ++k) {
    for (unsigned p = 1; p <= nmax; ++p) {
      for (unsigned n = 1; n <= nmax; ++n) {
        for (unsigned r = 0; r < k; ++r) {
          const auto formula = count_tpn_mp(p, n, k, r);
          const auto brute = brute_force_tpn_mp(p, n, k, r);
          add("T_MP(p=" + std::to_string(p) + ",n=" + std::to_string(n) + ",k=" + std::to_string(k) +
                  ",r=" + std::to_string(r) + ")",
              formula, brute, formula == brute);
        }
      }
    }
  }
  return rows;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"rmt-lab: random-matrix spectral-law laboratory", "rmt-lab"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config-file", "", "JSON file with flag values; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.footer("Exit codes: 0 success, 1 runtime or verification failure, 2 usage error.\n"
             "RMT_LAB_THREADS caps worker threads (0 or unset = auto).");

  // spectrum
  EnsembleFlags spectrum_flags;
  std::string spectrum_out = "-";
  auto* spectrum = app.add_subcommand("spectrum", "sample a matrix and write its sorted eigenvalues (CSV column lambda)");
  spectrum_flags.attach(spectrum, 100);
  spectrum->add_option("--out", spectrum_out, "output path, - for stdout")->capture_default_str();

  // verify-counts
  unsigned kmax = 5, nmax = 4;
  auto* verify = app.add_subcommand("verify-counts", "compare counting-lemma closed forms with exhaustive enumeration");
  verify->add_option("--kmax", kmax, "largest path parameter k (<= 7)")->check(CLI::Range(1u, 7u))->capture_default_str();
  verify->add_option("--nmax", nmax, "largest alphabet size n (and p) (<= 5)")
      ->check(CLI::Range(1u, 5u))
      ->capture_default_str();

  // kde
  std::size_t kde_n = 100;
  double kde_eta = 0.1;
  std::uint64_t kde_seed = 0;
  std::string kde_grid = "-2.5:2.5:0.01", kde_dist = "rademacher", kde_out = "-";
  auto* kde_cmd = app.add_subcommand("kde", "Cauchy-kernel density of a Wigner spectrum next to the semicircle (E,density,f_sigma)");
  kde_cmd->add_option("--n", kde_n, "Wigner dimension")->check(CLI::PositiveNumber)->capture_default_str();
  kde_cmd->add_option("--eta", kde_eta, "bandwidth (> 0)")->check(CLI::PositiveNumber)->capture_default_str();
  kde_cmd->add_option("--seed", kde_seed, "64-bit seed")->capture_default_str();
  kde_cmd->add_option("--grid", kde_grid, "evaluation grid lo:hi:step")->capture_default_str();
  kde_cmd->add_option("--dist", kde_dist, "rademacher, uniform or gaussian")
      ->check(CLI::IsMember({"rademacher", "uniform", "gaussian"}))
      ->capture_default_str();
  kde_cmd->add_option("--out", kde_out, "output path, - for stdout")->capture_default_str();

  // figure
  KdeFigureConfig fig;
  std::string fig_out = "-", fig_csv_dir;
  auto* figure = app.add_subcommand("figure", "repeat the KDE study over many seeds; JSON summary per bandwidth");
  figure->add_option("--n", fig.n, "Wigner dimension")->check(CLI::PositiveNumber)->capture_default_str();
  figure->add_option("--etas", fig.etas, "bandwidths")->check(CLI::PositiveNumber)->delimiter(',')->capture_default_str();
  figure->add_option("--trials", fig.trials, "number of seeds")->check(CLI::PositiveNumber)->capture_default_str();
  figure->add_option("--seed", fig.base_seed, "base seed")->capture_default_str();
  figure->add_option("--out", fig_out, "JSON output path, - for stdout")->capture_default_str();
  figure->add_option("--csv-dir", fig_csv_dir, "also write the first trial's curve per bandwidth as CSV here");

  // converge
  std::string conv_config, conv_out = "-";
  std::optional<std::string> conv_ensemble, conv_dist;
  std::vector<std::size_t> conv_sizes;
  std::optional<unsigned> conv_trials;
  std::optional<std::uint64_t> conv_seed;
  std::optional<double> conv_ratio;
  bool conv_omega = false;
  auto* converge = app.add_subcommand("converge", "Monte-Carlo convergence experiment; JSON report");
  converge->add_option("--config", conv_config, "experiment JSON (keys as in the report's config block)")
      ->check(CLI::ExistingFile);
  converge->add_option("--out", conv_out, "output path, - for stdout")->capture_default_str();
  converge->add_option("--ensemble", conv_ensemble, "override: wigner or mp")->check(CLI::IsMember({"wigner", "mp"}));
  converge->add_option("--dist", conv_dist, "override: entry distribution")
      ->check(CLI::IsMember({"rademacher", "uniform", "gaussian"}));
  converge->add_option("--sizes", conv_sizes, "override: ascending sizes, comma separated")
      ->check(CLI::PositiveNumber)
      ->delimiter(',');
  converge->add_option("--trials", conv_trials, "override: trials per size")->check(CLI::PositiveNumber);
  converge->add_option("--seed", conv_seed, "override: base seed");
  converge->add_option("--ratio", conv_ratio, "override: MP ratio y")->check(CLI::PositiveNumber);
  converge->add_flag("--omega", conv_omega, "also record max |Omega_k| at z = i");
  converge->footer("Defaults without --config: wigner, rademacher, sizes 100,400, 5 trials, seed 20240601,\n"
                   "moments k <= 4, z grid {i, 1+0.5i, -1+0.25i}, KDE eta = n^(-1/2).");

  // omega
  EnsembleFlags omega_flags;
  std::string omega_z = "0,1", omega_out = "-";
  bool omega_skip_r = false;
  auto* omega = app.add_subcommand("omega", "per-index error terms Omega_k = A + B + C + D; JSON report");
  omega_flags.attach(omega, 50);
  omega->add_option("--z", omega_z, "spectral parameter E,ETA with ETA > 0")->capture_default_str();
  omega->add_flag("--no-r-terms", omega_skip_r, "skip the R and R' norms");
  omega->add_option("--out", omega_out, "output path, - for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (spectrum->parsed()) {
      const EnsembleSpec spec = spectrum_flags.spec();
      const SymMatrix m = spec.kind == EnsembleKind::Wigner ? sample_wigner(spec) : sample_mp(spec).v;
      std::ostringstream csv;
      write_esd_csv(csv, esd_of(m));
      emit(spectrum_out, csv.str(), out);
      return 0;
    }
    if (verify->parsed()) {
      const auto rows = count_table(kmax, nmax);
      std::ostringstream table;
      table << "# lemma(parameters): closed form, exhaustive count, match\n";
      bool all = true;
      for (const CountRow& r : rows) {
        table << r.label << ": formula " << r.formula << ", brute " << r.brute << ", match "
              << (r.match ? "true" : "false") << '\n';
        if (!r.match) {
          all = false;
          err << "mismatch: " << r.label << " formula " << r.formula << " brute " << r.brute << '\n';
        }
      }
      out << table.str();
      return all ? 0 : 1;
    }
    if (kde_cmd->parsed()) {
      const std::vector<double> grid = parse_grid(kde_grid);
      const Esd esd = esd_of(sample_wigner(EnsembleSpec::wigner(kde_n, parse_distribution(kde_dist), kde_seed)));
      std::ostringstream csv;
      write_kde_csv(csv, kde(esd, kde_eta, grid), LimitLaw::semicircle());
      emit(kde_out, csv.str(), out);
      return 0;
    }
    if (figure->parsed()) {
      const auto series = run_kde_figure(fig);
      if (!fig_csv_dir.empty()) {
        std::filesystem::create_directories(fig_csv_dir);
        for (const KdeFigureSeries& s : series) {
          std::ostringstream csv;
          write_kde_csv(csv, s.first_curve, LimitLaw::semicircle());
          write_text_file(std::filesystem::path(fig_csv_dir) / ("kde_eta_" + format_double(s.eta) + ".csv"),
                          csv.str());
        }
      }
      emit(fig_out, to_json(series).dump(2), out);
      return 0;
    }
    if (converge->parsed()) {
      ExperimentConfig cfg;
      try {
        json raw = conv_config.empty() ? json::object() : read_json_file(conv_config);
        if (conv_ensemble) raw["ensemble"] = *conv_ensemble;
        if (conv_dist) raw["dist"] = *conv_dist;
        if (!conv_sizes.empty()) raw["sizes"] = conv_sizes;
        if (conv_trials) raw["trials"] = *conv_trials;
        if (conv_seed) raw["base_seed"] = *conv_seed;
        if (conv_ratio) raw["ratio"] = *conv_ratio;
        if (conv_omega) raw["omega"] = true;
        cfg = config_from_json(raw);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      emit(conv_out, to_json(run_law_experiment(cfg)).dump(2), out);
      return 0;
    }
    if (omega->parsed()) {
      const ComplexPoint z = parse_z(omega_z);
      const EnsembleSpec spec = omega_flags.spec();
      const OmegaOptions opts{.r_terms = !omega_skip_r};
      const OmegaReport rep = spec.kind == EnsembleKind::Wigner ? omega_report_wigner(sample_wigner(spec), z, opts)
                                                                : omega_report_mp(sample_mp(spec).x, z, opts);
      emit(omega_out, to_json(rep).dump(2), out);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"rmt-lab"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace rmtlab
