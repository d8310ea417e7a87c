#include <cmath>
#include <complex>
#include <cstdio>
#include <future>
#include <numbers>
#include <ostream>

#include "splitmax/cli/commands.hpp"
#include "splitmax/derham.hpp"
#include "splitmax/dynamics.hpp"
#include "splitmax/error.hpp"

namespace splitmax::cli {
namespace {

constexpr double kPi = std::numbers::pi;

// |sum_j w_j x_j exp(-i omega t_j)|
double windowed_magnitude(const std::vector<double>& wx, double dt, double omega) {
  const std::complex<double> step = std::polar(1.0, -omega * dt);
  std::complex<double> phasor = 1.0, acc = 0.0;
  for (double v : wx) {
    acc += v * phasor;
    phasor *= step;
  }
  return std::abs(acc);
}

std::pair<double, double> effective_coefficients(const ModelSpec& spec) {
  if (std::holds_alternative<Vacuum>(spec.variant)) return {1.0, 0.0};
  if (const auto* p = std::get_if<NonlocalDispersive>(&spec.variant)) {
    return {1.0 + spec.fourpi * p->alpha, spec.fourpi * p->beta};
  }
  throw ValidationError("model.variant: dispersion requires vacuum or nonlocal_dispersive");
}

double simulate_mode(const RunConfig& cfg, const GridSpec& g, int mode, double duration) {
  auto disc = std::make_shared<const Discretization>(Discretization::build(g, cfg.material_metric()));
  const auto model = make_model(cfg.model, disc);
  const double k = 2 * kPi * mode / g.length(0);
  SimState s = SimState::zero(g);
  s.dtilde = de_rham_map(g, ComponentField([k](const Point& x) -> Components {
                           return {0.0, std::cos(k * x[0]), 0.0};
                         }),
                         Complex::dual, 2);
  const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(*model);
  const long steps = static_cast<long>(std::ceil(duration / dt));
  SolveOptions opts;
  opts.tol = cfg.tol;
  std::vector<double> probe;
  probe.reserve(static_cast<std::size_t>(steps) + 1);
  probe.push_back(s.dtilde.at(1, 0, 0, 0));
  for (long i = 0; i < steps; ++i) {
    switch (cfg.scheme) {
      case Scheme::midpoint: s = step_midpoint(*model, s, dt, cfg.tol); break;
      case Scheme::splitting: s = step_splitting_linear(*model, s, dt, opts); break;
      case Scheme::single_complex: s = step_single_complex(*model, s, dt, opts); break;
    }
    probe.push_back(s.dtilde.at(1, 0, 0, 0));
  }
  return estimate_frequency(probe, dt);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

double dispersion_theory(double k, double c, double alpha, double beta) {
  return std::sqrt(c * c * k * k / (alpha + beta * k * k));
}

double estimate_frequency(const std::vector<double>& samples, double dt) {
  const std::size_t n = samples.size();
  if (n < 8) throw ValidationError("dispersion: too few samples for a frequency estimate");
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> wx(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double w = 0.5 * (1.0 - std::cos(2 * kPi * static_cast<double>(j) / static_cast<double>(n - 1)));
    wx[j] = w * (samples[j] - mean);
  }
  const double bin = 2 * kPi / (static_cast<double>(n) * dt);
  std::size_t peak = 1;
  double best = -1.0;
  std::vector<double> mag(n / 2 + 1);
  for (std::size_t p = 1; p <= n / 2; ++p) {
    mag[p] = windowed_magnitude(wx, dt, bin * static_cast<double>(p));
    if (mag[p] > best) {
      best = mag[p];
      peak = p;
    }
  }
  double centre = static_cast<double>(peak);
  if (peak > 1 && peak < n / 2) {
    const double a = mag[peak - 1], b = mag[peak], c = mag[peak + 1];
    const double denom = a - 2 * b + c;
    if (denom != 0.0) centre += 0.5 * (a - c) / denom;
  }
  // Golden-section refinement of the transform maximum within one bin of the estimate.
  double lo = bin * (centre - 1.0), hi = bin * (centre + 1.0);
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = windowed_magnitude(wx, dt, x1), f2 = windowed_magnitude(wx, dt, x2);
  while (hi - lo > 1e-13 * hi) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = windowed_magnitude(wx, dt, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = windowed_magnitude(wx, dt, x1);
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<DispersionRow> dispersion_scan(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const auto [alpha, beta] = effective_coefficients(cfg.model);
  if (cfg.grid.n[1] != 2 || cfg.grid.n[2] != 2) {
    throw ValidationError("grid.n: dispersion requires an N x 2 x 2 grid");
  }
  const double length = cfg.grid.length(0);
  std::vector<int> resolutions = cfg.dispersion_resolutions;
  if (resolutions.empty()) resolutions.push_back(cfg.grid.n[0]);

  double omega_min = INFINITY;
  for (int m : cfg.dispersion_modes) {
    omega_min = std::min(omega_min, dispersion_theory(2 * kPi * m / length, cfg.model.c, alpha, beta));
  }
  const double duration = cfg.dispersion_periods * 2 * kPi / omega_min;

  std::vector<DispersionRow> rows;
  for (int n : resolutions) {
    GridSpec g = cfg.grid;
    g.n[0] = n;
    g.h[0] = length / n;
    g.validate();
    std::vector<std::future<double>> jobs;
    for (int m : cfg.dispersion_modes) {
      jobs.push_back(std::async(std::launch::async, simulate_mode, std::cref(cfg), g, m, duration));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      DispersionRow row;
      row.n = n;
      row.mode = cfg.dispersion_modes[i];
      row.k = 2 * kPi * row.mode / length;
      row.omega_measured = jobs[i].get();
      row.omega_theory = dispersion_theory(row.k, cfg.model.c, alpha, beta);
      row.vph_theory = row.omega_theory / row.k;
      row.rel_error = std::abs(row.omega_measured - row.omega_theory) / row.omega_theory;
      row.points_per_wavelength = static_cast<double>(n) / row.mode;
      row.resolved = row.points_per_wavelength >= 8.0;
      log << "dispersion: N = " << n << ", mode " << row.mode << ", omega = " << fmt(row.omega_measured)
          << " (theory " << fmt(row.omega_theory) << ")\n";
      rows.push_back(row);
    }
  }
  return rows;
}

std::string dispersion_csv(const std::vector<DispersionRow>& rows) {
  std::string out = "N,mode,k,omega_measured,omega_theory,v_ph_theory,rel_error,points_per_wavelength,resolved\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", r.n, r.mode, r.k,
                  r.omega_measured, r.omega_theory, r.vph_theory, r.rel_error, r.points_per_wavelength,
                  r.resolved ? "yes" : "no");
    out += buf;
  }
  return out;
}

}  // namespace splitmax::cli
