#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "json.hpp"

#include "splitmax/cli/commands.hpp"
#include "splitmax/cli/init.hpp"
#include "splitmax/dynamics.hpp"
#include "splitmax/error.hpp"
#include "splitmax/snapshot.hpp"

namespace splitmax::cli {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string snapshot_name(long step) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_%08ld.smx", step);
  return buf;
}

SimState advance(const RunConfig& cfg, const ConstitutiveModel& model, const SimState& s, double dt,
                 StepStats& st) {
  SolveOptions opts;
  opts.tol = cfg.tol;
  switch (cfg.scheme) {
    case Scheme::midpoint: return step_midpoint(model, s, dt, cfg.tol, &st);
    case Scheme::splitting: return step_splitting_linear(model, s, dt, opts, &st);
    case Scheme::single_complex: return step_single_complex(model, s, dt, opts, &st);
  }
  return s;
}

void write_summary(const std::filesystem::path& path, const RunConfig& cfg, const RunSummary& r,
                   const std::string& status, const std::string& message) {
  nlohmann::ordered_json j;
  j["status"] = status;
  if (!message.empty()) j["message"] = message;
  j["config_hash"] = r.config_hash;
  j["model"] = cfg.model.name();
  j["scheme"] = to_string(cfg.scheme);
  j["grid"] = {{"n", cfg.grid.n}, {"h", cfg.grid.h}};
  j["dt"] = r.dt;
  j["steps"] = r.steps;
  j["t_final"] = r.t_final;
  j["initial_H"] = r.h_initial;
  j["final_H"] = r.h_final;
  j["relative_energy_drift"] = r.h_initial != 0.0 ? std::abs(r.h_final - r.h_initial) / std::abs(r.h_initial)
                                                  : std::abs(r.h_final - r.h_initial);
  j["max_casimir_drift"] = {{"d", r.max_casimir_drift_d}, {"b", r.max_casimir_drift_b}};
  j["solver"] = {{"newton_iterations", r.newton_iterations},
                 {"krylov_iterations", r.krylov_iterations},
                 {"max_residual", r.max_residual}};
  j["snapshots"] = r.snapshots;
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << "\n";
}

}  // namespace

std::filesystem::path output_directory(const RunConfig& cfg) {
  if (const char* env = std::getenv("SPLITMAX_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
  return cfg.output_dir;
}

RunSummary run(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  auto disc = std::make_shared<const Discretization>(Discretization::build(cfg.grid, cfg.material_metric()));
  const auto model = make_model(cfg.model, disc);
  SimState s = make_initial_state(cfg, *disc);
  const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(*model);
  SolveOptions hopts;
  hopts.tol = cfg.tol;

  RunSummary r;
  r.config_hash = config_hash(cfg);
  r.dt = dt;
  r.h_initial = hamiltonian(*model, s, hopts);
  r.h_final = r.h_initial;
  r.t_final = s.t;

  const auto dir = output_directory(cfg);
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / "diagnostics.csv", std::ios::binary);
  if (!csv) throw ValidationError("output.dir: cannot write to " + dir.string());
  csv << "# config_hash=" << r.config_hash << "\n";
  csv << "step,t,H,casimir_d,casimir_b,solver_iterations\n";

  const auto c0 = casimirs(disc->complex, s);
  auto row = [&](long step, double h, const std::pair<double, double>& c, long iters) {
    csv << step << ',' << fmt(s.t) << ',' << fmt(h) << ',' << fmt(c.first) << ',' << fmt(c.second) << ','
        << iters << "\n";
  };
  row(0, r.h_initial, c0, 0);
  if (cfg.snapshot_every > 0) {
    save_state(dir / snapshot_name(0), s);
    r.snapshots.push_back(snapshot_name(0));
  }
  log << "run: " << cfg.model.name() << ", " << to_string(cfg.scheme) << ", dt = " << fmt(dt) << ", "
      << cfg.steps << " steps\n";

  long iters_since_row = 0;
  try {
    for (long step = 1; step <= cfg.steps; ++step) {
      StepStats st;
      s = advance(cfg, *model, s, dt, st);
      r.steps = step;
      r.t_final = s.t;
      r.newton_iterations += st.newton_iterations;
      r.krylov_iterations += st.krylov_iterations;
      r.max_residual = std::max(r.max_residual, st.residual);
      iters_since_row += st.newton_iterations + st.krylov_iterations;
      const auto c = casimirs(disc->complex, s);
      r.max_casimir_drift_d = std::max(r.max_casimir_drift_d, std::abs(c.first - c0.first));
      r.max_casimir_drift_b = std::max(r.max_casimir_drift_b, std::abs(c.second - c0.second));
      if (step % cfg.diagnostics_every == 0 || step == cfg.steps) {
        r.h_final = hamiltonian(*model, s, hopts);
        row(step, r.h_final, c, iters_since_row);
        iters_since_row = 0;
      }
      if (cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0) {
        save_state(dir / snapshot_name(step), s);
        r.snapshots.push_back(snapshot_name(step));
      }
    }
  } catch (const DivergenceError& e) {
    csv.flush();
    write_summary(dir / "summary.json", cfg, r, "diverged", e.what());
    throw;
  }

  save_state(dir / "final_state.smx", s);
  write_summary(dir / "summary.json", cfg, r, "ok", "");
  log << "run: H " << fmt(r.h_initial) << " -> " << fmt(r.h_final) << ", max Casimir drift "
      << fmt(std::max(r.max_casimir_drift_d, r.max_casimir_drift_b)) << "\n";
  return r;
}

}  // namespace splitmax::cli
