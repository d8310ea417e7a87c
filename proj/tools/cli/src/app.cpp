#include <fstream>
#include <ostream>

#include "CLI11.hpp"

#include "splitmax/cli/commands.hpp"
#include "splitmax/error.hpp"

namespace splitmax::cli {

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"splitmax: structure-preserving macroscopic Maxwell solver"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run_cmd = app.add_subcommand("run", "Run a simulation from a config file");
  run_cmd->add_option("config", run_config, "Config file")->required();

  VerifyOptions vopts;
  std::uint64_t seed = 1;
  std::string check, report_path;
  auto* verify_cmd = app.add_subcommand("verify", "Run the built-in identity and consistency checks");
  verify_cmd->add_option("--trials", vopts.trials, "Random trials per check")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", seed, "RNG seed");
  verify_cmd->add_option("--check", check, "Run a single named check");
  verify_cmd->add_option("--output", report_path, "Also write the JSON report to this file");
  verify_cmd->add_flag_callback("--list", [&] {
    for (const auto& n : verify_check_names()) out << n << "\n";
    throw CLI::Success();
  }, "List check names");

  std::string dispersion_config;
  auto* disp_cmd = app.add_subcommand("dispersion", "Measure the dispersion relation of plane waves");
  disp_cmd->add_option("config", dispersion_config, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return validation_error;
  }

  try {
    if (*run_cmd) {
      const RunConfig cfg = load_config(run_config);
      const RunSummary r = run(cfg, err);
      out << "H " << r.h_initial << " -> " << r.h_final << "; max Casimir drift "
          << std::max(r.max_casimir_drift_d, r.max_casimir_drift_b) << "; output "
          << output_directory(cfg).string() << "\n";
      return ok;
    }
    if (*verify_cmd) {
      vopts.seed = seed;
      if (!check.empty()) vopts.check = check;
      const auto results = verify(vopts);
      const std::string report = verify_report_json(vopts, results);
      out << report;
      if (!report_path.empty()) std::ofstream(report_path, std::ios::binary) << report;
      for (const auto& r : results) {
        if (!r.pass()) return verification_failure;
      }
      return ok;
    }
    if (*disp_cmd) {
      const RunConfig cfg = load_config(dispersion_config);
      const auto rows = dispersion_scan(cfg, err);
      const std::string table = dispersion_csv(rows);
      const auto dir = output_directory(cfg);
      std::filesystem::create_directories(dir);
      std::ofstream(dir / "dispersion.csv", std::ios::binary) << table;
      out << table;
      for (const auto& r : rows) {
        if (r.resolved && r.rel_error > cfg.dispersion_tolerance) return verification_failure;
      }
      return ok;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return validation_error;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << "\n";
    return divergence;
  } catch (const NotInvertibleError& e) {
    err << "error: " << e.what() << "\n";
    return divergence;
  } catch (const MismatchError& e) {
    err << "error: " << e.what() << "\n";
    return validation_error;
  }
  return ok;
}

}  // namespace splitmax::cli
