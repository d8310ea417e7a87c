#include "splitmax/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "splitmax/error.hpp"

namespace splitmax::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& value) {
  std::string v = value;
  std::replace(v.begin(), v.end(), ',', ' ');
  std::istringstream in(v);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

double to_double(const std::string& key, const std::string& t) {
  double v = 0.0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (r.ec != std::errc() || r.ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ValidationError(key + ": expected a real number, got '" + t + "'");
  }
  return v;
}

long to_long(const std::string& key, const std::string& t) {
  long v = 0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (r.ec != std::errc() || r.ptr != t.data() + t.size()) {
    throw ValidationError(key + ": expected an integer, got '" + t + "'");
  }
  return v;
}

std::vector<std::string> count(const std::string& key, const std::string& value, std::size_t lo,
                               std::size_t hi) {
  auto t = tokens(value);
  if (t.size() < lo || t.size() > hi) {
    throw ValidationError(key + ": expected " +
                          (lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi)) +
                          " value(s)");
  }
  return t;
}

std::array<double, 3> reals3(const std::string& key, const std::string& value) {
  const auto t = count(key, value, 1, 3);
  if (t.size() == 2) throw ValidationError(key + ": expected 1 or 3 values");
  std::array<double, 3> out{};
  for (int a = 0; a < 3; ++a) out[a] = to_double(key, t[t.size() == 1 ? 0 : a]);
  return out;
}

std::array<int, 3> ints3(const std::string& key, const std::string& value) {
  const auto t = count(key, value, 3, 3);
  std::array<int, 3> out{};
  for (int a = 0; a < 3; ++a) out[a] = static_cast<int>(to_long(key, t[a]));
  return out;
}

std::vector<int> int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  for (const auto& t : count(key, value, 1, 1000)) out.push_back(static_cast<int>(to_long(key, t)));
  return out;
}

double real1(const std::string& key, const std::string& value) {
  return to_double(key, count(key, value, 1, 1)[0]);
}

std::string word(const std::string& key, const std::string& value) { return count(key, value, 1, 1)[0]; }

int parse_axis(const std::string& key, const std::string& value) {
  const std::string w = word(key, value);
  if (w == "x" || w == "0") return 0;
  if (w == "y" || w == "1") return 1;
  if (w == "z" || w == "2") return 2;
  throw ValidationError(key + ": expected x, y or z");
}

struct ModelParams {
  std::string variant = "vacuum";
  double chi1 = 0.0, chi3 = 0.0, alpha = 0.0, beta = 0.0;
};

}  // namespace

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::midpoint: return "midpoint";
    case Scheme::splitting: return "splitting";
    case Scheme::single_complex: return "single_complex";
  }
  return "?";
}

const char* to_string(InitialCondition::Variant v) {
  switch (v) {
    case InitialCondition::Variant::plane_wave: return "plane_wave";
    case InitialCondition::Variant::gaussian_pulse: return "gaussian_pulse";
    case InitialCondition::Variant::from_snapshot: return "from_snapshot";
    case InitialCondition::Variant::random: return "random";
  }
  return "?";
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  ModelParams mp;
  bool have_h = false;
  std::map<std::string, std::string> seen;

  const std::map<std::string, std::function<void(const std::string&, const std::string&)>> handlers{
      {"grid.n", [&](auto& k, auto& v) { cfg.grid.n = ints3(k, v); }},
      {"grid.h", [&](auto& k, auto& v) { cfg.grid.h = reals3(k, v); have_h = true; }},
      {"metric.g", [&](auto& k, auto& v) { cfg.metric = reals3(k, v); }},
      {"model.variant", [&](auto& k, auto& v) { mp.variant = word(k, v); }},
      {"model.chi1", [&](auto& k, auto& v) { mp.chi1 = real1(k, v); }},
      {"model.chi3", [&](auto& k, auto& v) { mp.chi3 = real1(k, v); }},
      {"model.alpha", [&](auto& k, auto& v) { mp.alpha = real1(k, v); }},
      {"model.beta", [&](auto& k, auto& v) { mp.beta = real1(k, v); }},
      {"units.c", [&](auto& k, auto& v) { cfg.model.c = real1(k, v); }},
      {"units.fourpi", [&](auto& k, auto& v) { cfg.model.fourpi = real1(k, v); }},
      {"integrator.scheme",
       [&](auto& k, auto& v) {
         const std::string w = word(k, v);
         if (w == "midpoint") cfg.scheme = Scheme::midpoint;
         else if (w == "splitting") cfg.scheme = Scheme::splitting;
         else if (w == "single_complex") cfg.scheme = Scheme::single_complex;
         else throw ValidationError(k + ": expected midpoint, splitting or single_complex");
       }},
      {"integrator.dt",
       [&](auto& k, auto& v) {
         const std::string w = word(k, v);
         cfg.dt = w == "auto" ? 0.0 : to_double(k, w);
         if (w != "auto" && !(cfg.dt > 0.0)) throw ValidationError("integrator.dt: dt > 0 required");
       }},
      {"integrator.steps", [&](auto& k, auto& v) { cfg.steps = to_long(k, word(k, v)); }},
      {"integrator.tol", [&](auto& k, auto& v) { cfg.tol = real1(k, v); }},
      {"init.variant",
       [&](auto& k, auto& v) {
         const std::string w = word(k, v);
         using V = InitialCondition::Variant;
         if (w == "plane_wave") cfg.init.variant = V::plane_wave;
         else if (w == "gaussian_pulse") cfg.init.variant = V::gaussian_pulse;
         else if (w == "from_snapshot") cfg.init.variant = V::from_snapshot;
         else if (w == "random") cfg.init.variant = V::random;
         else throw ValidationError(k + ": expected plane_wave, gaussian_pulse, from_snapshot or random");
       }},
      {"init.k", [&](auto& k, auto& v) { cfg.init.k = ints3(k, v); }},
      {"init.amplitude", [&](auto& k, auto& v) { cfg.init.amplitude = real1(k, v); }},
      {"init.axis", [&](auto& k, auto& v) { cfg.init.axis = parse_axis(k, v); }},
      {"init.center", [&](auto& k, auto& v) { cfg.init.center = reals3(k, v); }},
      {"init.width", [&](auto& k, auto& v) { cfg.init.width = real1(k, v); }},
      {"init.path", [&](auto&, auto& v) { cfg.init.path = v; }},
      {"output.dir", [&](auto&, auto& v) { cfg.output_dir = v; }},
      {"output.diagnostics_every", [&](auto& k, auto& v) { cfg.diagnostics_every = to_long(k, word(k, v)); }},
      {"output.snapshot_every", [&](auto& k, auto& v) { cfg.snapshot_every = to_long(k, word(k, v)); }},
      {"seed",
       [&](auto& k, auto& v) {
         const long s = to_long(k, word(k, v));
         if (s < 0) throw ValidationError("seed: seed >= 0 required");
         cfg.seed = static_cast<std::uint64_t>(s);
       }},
      {"dispersion.modes", [&](auto& k, auto& v) { cfg.dispersion_modes = int_list(k, v); }},
      {"dispersion.resolutions", [&](auto& k, auto& v) { cfg.dispersion_resolutions = int_list(k, v); }},
      {"dispersion.periods", [&](auto& k, auto& v) { cfg.dispersion_periods = real1(k, v); }},
      {"dispersion.tolerance", [&](auto& k, auto& v) { cfg.dispersion_tolerance = real1(k, v); }},
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = handlers.find(key);
    if (it == handlers.end()) throw ValidationError(key + ": unknown configuration key");
    if (seen.count(key)) throw ValidationError(key + ": duplicate key");
    if (value.empty()) throw ValidationError(key + ": missing value");
    it->second(key, value);
    std::string canon;
    for (const auto& t : tokens(value)) canon += (canon.empty() ? "" : " ") + t;
    seen[key] = canon;
  }

  if (!have_h) {
    for (int a = 0; a < 3; ++a) cfg.grid.h[a] = cfg.grid.n[a] > 0 ? 1.0 / cfg.grid.n[a] : 1.0;
  }

  if (mp.variant == "vacuum") {
    cfg.model.variant = Vacuum{};
  } else if (mp.variant == "kerr") {
    cfg.model.variant = Kerr{mp.chi1, mp.chi3};
  } else if (mp.variant == "nonlocal_dispersive") {
    cfg.model.variant = NonlocalDispersive{mp.alpha, mp.beta};
  } else if (mp.variant == "magnetoelectric") {
    cfg.model.variant = Magnetoelectric{mp.alpha};
  } else {
    throw ValidationError("model.variant: expected vacuum, kerr, nonlocal_dispersive or magnetoelectric");
  }

  for (const auto& [k, v] : seen) cfg.canonical += k + "=" + v + "\n";
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const RunConfig& cfg) {
  cfg.grid.validate();
  for (double g : cfg.metric) {
    if (!(g > 0.0)) throw ValidationError("metric.g: g_i > 0 required");
  }
  if (!(cfg.model.c > 0.0)) throw ValidationError("units.c: c > 0 required");
  if (!(cfg.model.fourpi > 0.0)) throw ValidationError("units.fourpi: fourpi > 0 required");
  if (cfg.dt < 0.0) throw ValidationError("integrator.dt: dt > 0 required");
  if (cfg.steps < 0) throw ValidationError("integrator.steps: steps >= 0 required");
  if (!(cfg.tol > 0.0)) throw ValidationError("integrator.tol: tol > 0 required");
  if (cfg.scheme != Scheme::midpoint && !cfg.model.linear()) {
    throw ValidationError(std::string("integrator.scheme: ") + to_string(cfg.scheme) +
                          " requires a linear model (vacuum or nonlocal_dispersive)");
  }
  if (cfg.diagnostics_every < 1) {
    throw ValidationError("output.diagnostics_every: diagnostics_every >= 1 required");
  }
  if (cfg.snapshot_every < 0) throw ValidationError("output.snapshot_every: snapshot_every >= 0 required");
  if (cfg.output_dir.empty()) throw ValidationError("output.dir: empty path");

  const auto& ic = cfg.init;
  using V = InitialCondition::Variant;
  if (!std::isfinite(ic.amplitude)) throw ValidationError("init.amplitude: finite value required");
  if (ic.variant == V::plane_wave) {
    if (ic.k == std::array<int, 3>{0, 0, 0}) throw ValidationError("init.k: nonzero mode required");
    if (ic.k[ic.axis] != 0) {
      throw ValidationError("init.axis: polarization must be orthogonal to init.k");
    }
  }
  if (ic.variant == V::gaussian_pulse && !(ic.width > 0.0)) {
    throw ValidationError("init.width: width > 0 required");
  }
  if (ic.variant == V::from_snapshot && ic.path.empty()) {
    throw ValidationError("init.path: required for from_snapshot");
  }

  for (int m : cfg.dispersion_modes) {
    if (m < 1) throw ValidationError("dispersion.modes: mode numbers >= 1 required");
  }
  for (int n : cfg.dispersion_resolutions) {
    if (n < 2) throw ValidationError("dispersion.resolutions: N >= 2 required");
  }
  if (!(cfg.dispersion_periods >= 1.0)) throw ValidationError("dispersion.periods: periods >= 1 required");
  if (!(cfg.dispersion_tolerance > 0.0)) throw ValidationError("dispersion.tolerance: tolerance > 0 required");

  // Model parameters are checked against the grid's discrete operators.
  auto disc = std::make_shared<const Discretization>(Discretization::build(cfg.grid, cfg.material_metric()));
  make_model(cfg.model, disc);
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string config_hash(const RunConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(cfg.canonical)));
  return buf;
}

}  // namespace splitmax::cli
