#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <random>

#include "splitmax/derham.hpp"
#include "splitmax/dynamics.hpp"

using namespace splitmax;

namespace {

GridSpec cube(int n) { return GridSpec{{n, n, n}, {1.0 / n, 1.0 / n, 1.0 / n}}; }

Cochain random_cochain(const GridSpec& g, Complex c, int degree, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  Cochain out(g, c, degree);
  for (auto& v : out.values()) v = u(rng);
  return out;
}

std::shared_ptr<const Discretization> disc_of(int n) {
  return std::make_shared<const Discretization>(Discretization::build(cube(n), MaterialMetric(1.0, 1.2, 0.9)));
}

SimState smooth_state(const Discretization& d, double amp) {
  const auto field = [amp](const Point& x) -> Components {
    return {amp * std::sin(2 * M_PI * x[1]), amp * std::cos(2 * M_PI * x[2]), amp * std::sin(2 * M_PI * x[0])};
  };
  SimState s = SimState::zero(d.grid);
  s.dtilde = d.complex.dual_d[1].apply(de_rham_map(d.grid, field, Complex::dual, 1));
  s.b = d.complex.d[1].apply(de_rham_map(d.grid, field, Complex::primal, 1));
  return s;
}

void BM_Curl(benchmark::State& state) {
  const GridSpec g = cube(static_cast<int>(state.range(0)));
  const auto cx = build_complex(g);
  const Cochain e = random_cochain(g, Complex::primal, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(cx.d[1].apply(e));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(e.size()));
}
BENCHMARK(BM_Curl)->Arg(16)->Arg(32)->Arg(64);

void BM_Hodge(benchmark::State& state) {
  const auto d = disc_of(static_cast<int>(state.range(0)));
  const Cochain e = random_cochain(d->grid, Complex::primal, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(d->star[1].apply(e));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(e.size()));
}
BENCHMARK(BM_Hodge)->Arg(16)->Arg(32)->Arg(64);

void BM_KerrInversion(benchmark::State& state) {
  const auto d = disc_of(static_cast<int>(state.range(0)));
  const auto model = make_model(ModelSpec{Kerr{0.1, 0.5}}, d);
  const SimState s = smooth_state(*d, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(model->e_from_db(s.dtilde, s.b));
}
BENCHMARK(BM_KerrInversion)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MidpointStep(benchmark::State& state, ModelSpec spec) {
  const auto d = disc_of(static_cast<int>(state.range(0)));
  const auto model = make_model(spec, d);
  const SimState s = smooth_state(*d, 0.05);
  const double dt = default_dt(*model);
  for (auto _ : state) benchmark::DoNotOptimize(step_midpoint(*model, s, dt));
}
BENCHMARK_CAPTURE(BM_MidpointStep, vacuum, ModelSpec{Vacuum{}})->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MidpointStep, kerr, ModelSpec{Kerr{0.1, 0.5}})->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SplittingStep(benchmark::State& state) {
  const auto d = disc_of(static_cast<int>(state.range(0)));
  const auto model = make_model(ModelSpec{Vacuum{}}, d);
  const SimState s = smooth_state(*d, 0.05);
  const double dt = default_dt(*model);
  for (auto _ : state) benchmark::DoNotOptimize(step_splitting_linear(*model, s, dt));
}
BENCHMARK(BM_SplittingStep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
