#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "rmtlab/convergence.hpp"
#include "rmtlab/laws.hpp"
#include "rmtlab/spectra.hpp"
#include "rmtlab/stieltjes.hpp"

namespace rmtlab {

/// printf("%.17g").
std::string format_double(double v);

/// One matrix row per line, comma separated.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);

/// Header `lambda`, then one eigenvalue per line.
void write_esd_csv(std::ostream& out, const Esd& esd);

/// Header `E,density`; with a law, a third column named `f_sigma` for the
/// semicircle (`f_law` otherwise) holds the limit density.
void write_kde_csv(std::ostream& out, const KdeCurve& curve, const std::optional<LimitLaw>& law = {});

nlohmann::json to_json(const OmegaReport& report);
nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const ConvergenceReport& report);
nlohmann::json to_json(const std::vector<KdeFigureSeries>& figure);

/// Missing keys keep their defaults; unknown keys are rejected so typos do
/// not silently fall back. Throws std::invalid_argument.
ExperimentConfig config_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);

/// Writes text, appending a final newline if it lacks one. Throws
/// std::runtime_error on I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace rmtlab
