#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "splitmax/cli/config.hpp"

namespace splitmax::cli {

enum ExitCode : int { ok = 0, validation_error = 2, divergence = 3, verification_failure = 4 };

/// Output directory after applying the SPLITMAX_OUTPUT_DIR override.
std::filesystem::path output_directory(const RunConfig& cfg);

struct RunSummary {
  std::string config_hash;
  long steps = 0;
  double dt = 0.0;
  double t_final = 0.0;
  double h_initial = 0.0;
  double h_final = 0.0;
  double max_casimir_drift_d = 0.0;
  double max_casimir_drift_b = 0.0;
  long newton_iterations = 0;
  long krylov_iterations = 0;
  double max_residual = 0.0;
  std::vector<std::string> snapshots;
};

/// Runs the configured simulation, writing diagnostics.csv, snapshots and summary.json
/// into the output directory. Throws ValidationError / DivergenceError.
RunSummary run(const RunConfig& cfg, std::ostream& log);

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return max_residual <= tolerance; }
};

struct VerifyOptions {
  int trials = 100;
  std::uint64_t seed = 1;
  std::optional<std::string> check;
};

/// Names of every built-in check, in report order.
std::vector<std::string> verify_check_names();
/// Runs the built-in property suite. Throws ValidationError for an unknown check name.
std::vector<CheckResult> verify(const VerifyOptions& opts);
std::string verify_report_json(const VerifyOptions& opts, const std::vector<CheckResult>& results);

struct DispersionRow {
  int n = 0;
  int mode = 0;
  double k = 0.0;
  double omega_measured = 0.0;
  double omega_theory = 0.0;
  double vph_theory = 0.0;
  double rel_error = 0.0;
  double points_per_wavelength = 0.0;
  bool resolved = true;
};

/// omega = sqrt(c^2 k^2 / (alpha + beta k^2)); vacuum is alpha = 1, beta = 0.
double dispersion_theory(double k, double c, double alpha, double beta);

/// Windowed-transform frequency estimate of a uniformly sampled real signal.
double estimate_frequency(const std::vector<double>& samples, double dt);

/// Standing-wave scan over the configured modes and resolutions on N x 2 x 2 grids.
std::vector<DispersionRow> dispersion_scan(const RunConfig& cfg, std::ostream& log);
std::string dispersion_csv(const std::vector<DispersionRow>& rows);

}  // namespace splitmax::cli

namespace splitmax::cli {

/// Command-line entry point; returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace splitmax::cli
