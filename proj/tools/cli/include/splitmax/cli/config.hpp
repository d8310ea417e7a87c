#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "splitmax/constitutive.hpp"
#include "splitmax/grid.hpp"
#include "splitmax/metric_ops.hpp"

namespace splitmax::cli {

enum class Scheme { midpoint, splitting, single_complex };

struct InitialCondition {
  enum class Variant { plane_wave, gaussian_pulse, from_snapshot, random };
  Variant variant = Variant::plane_wave;
  std::array<int, 3> k{1, 0, 0};            // mode numbers
  double amplitude = 1.0;
  int axis = 1;                             // polarization / potential axis
  std::array<double, 3> center{0.5, 0.5, 0.5};
  double width = 0.1;
  std::string path;
};

struct RunConfig {
  GridSpec grid{{16, 16, 16}, {1.0 / 16, 1.0 / 16, 1.0 / 16}};
  std::array<double, 3> metric{1.0, 1.0, 1.0};
  ModelSpec model{};
  Scheme scheme = Scheme::midpoint;
  double dt = 0.0;  // 0 selects the default CFL step
  long steps = 100;
  double tol = 1e-10;
  InitialCondition init{};
  std::string output_dir = "splitmax_out";
  long diagnostics_every = 1;
  long snapshot_every = 0;
  std::uint64_t seed = 1;

  // dispersion subcommand
  std::vector<int> dispersion_modes{1, 2, 3};
  std::vector<int> dispersion_resolutions{};  // empty: grid.n[0] only
  double dispersion_periods = 20.0;
  double dispersion_tolerance = 0.02;

  /// Canonical key/value text the config hash is computed from.
  std::string canonical;

  MaterialMetric material_metric() const { return MaterialMetric(metric[0], metric[1], metric[2]); }
};

const char* to_string(Scheme s);
const char* to_string(InitialCondition::Variant v);

/// Parses "key = value" lines; '#' starts a comment. Throws ValidationError naming the
/// offending key for unknown keys, malformed values and failed preconditions.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Checks every numeric precondition, including model parameters against the grid.
void validate(const RunConfig& cfg);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);
std::string config_hash(const RunConfig& cfg);

}  // namespace splitmax::cli
