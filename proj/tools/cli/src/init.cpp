#include "splitmax/cli/init.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "splitmax/derham.hpp"
#include "splitmax/error.hpp"
#include "splitmax/snapshot.hpp"

namespace splitmax::cli {
namespace {

constexpr double kPi = std::numbers::pi;

Cochain random_potential(const GridSpec& g, Complex c, std::uint64_t seed, double amp) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amp, amp);
  Cochain out(g, c, 1);
  for (auto& v : out.values()) v = u(rng);
  return out;
}

}  // namespace

SimState make_initial_state(const RunConfig& cfg, const Discretization& disc) {
  const GridSpec& g = disc.grid;
  const InitialCondition& ic = cfg.init;
  SimState s = SimState::zero(g);
  switch (ic.variant) {
    case InitialCondition::Variant::plane_wave: {
      std::array<double, 3> k{};
      double kn = 0.0;
      for (int a = 0; a < 3; ++a) {
        k[a] = 2 * kPi * ic.k[a] / g.length(a);
        kn += k[a] * k[a];
      }
      kn = std::sqrt(kn);
      const int ax = ic.axis;
      const double amp = ic.amplitude;
      auto phase = [k](const Point& x) { return k[0] * x[0] + k[1] * x[1] + k[2] * x[2]; };
      s.dtilde = de_rham_map(g, ComponentField([&](const Point& x) {
                               Components v{};
                               v[ax] = amp * std::cos(phase(x));
                               return v;
                             }),
                             Complex::dual, 2);
      const Cochain a = de_rham_map(g, ComponentField([&](const Point& x) {
                                      Components v{};
                                      v[ax] = amp / kn * std::sin(phase(x));
                                      return v;
                                    }),
                                    Complex::primal, 1);
      s.b = disc.complex.d[1].apply(a);
      break;
    }
    case InitialCondition::Variant::gaussian_pulse: {
      const int ax = ic.axis;
      const double w2 = 2 * ic.width * ic.width;
      const Cochain a = de_rham_map(g, ComponentField([&](const Point& x) {
                                      double r2 = 0.0;
                                      for (int i = 0; i < 3; ++i) {
                                        const double l = g.length(i);
                                        double d = std::fmod(x[i] - ic.center[i], l);
                                        if (d > 0.5 * l) d -= l;
                                        if (d < -0.5 * l) d += l;
                                        r2 += d * d;
                                      }
                                      Components v{};
                                      v[ax] = ic.amplitude * std::exp(-r2 / w2);
                                      return v;
                                    }),
                                    Complex::primal, 1);
      s.b = disc.complex.d[1].apply(a);
      break;
    }
    case InitialCondition::Variant::random: {
      s.dtilde = disc.complex.dual_d[1].apply(random_potential(g, Complex::dual, cfg.seed, ic.amplitude));
      s.b = disc.complex.d[1].apply(random_potential(g, Complex::primal, cfg.seed + 1, ic.amplitude));
      break;
    }
    case InitialCondition::Variant::from_snapshot: {
      s = load_state(ic.path);
      if (!(s.b.grid() == g)) throw ValidationError("init.path: snapshot grid does not match grid.n / grid.h");
      break;
    }
  }
  return s;
}

}  // namespace splitmax::cli
