#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "json.hpp"

#include "splitmax/cli/commands.hpp"
#include "splitmax/derham.hpp"
#include "splitmax/dynamics.hpp"
#include "splitmax/error.hpp"
#include "splitmax/exterior3.hpp"

namespace splitmax::cli {
namespace {

constexpr double kPi = std::numbers::pi;

using Rng = std::mt19937_64;

Cochain random_cochain(const GridSpec& g, Complex c, int degree, Rng& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Cochain out(g, c, degree);
  for (auto& v : out.values()) v = u(rng);
  return out;
}

// A few seeded Fourier modes per component.
ComponentField smooth_field(const GridSpec& g, Rng& rng, double amp) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::array<std::array<double, 4>, 3> c{};
  for (auto& row : c)
    for (auto& v : row) v = u(rng);
  const std::array<double, 3> l{g.length(0), g.length(1), g.length(2)};
  return [=](const Point& x) -> Components {
    Components out{};
    for (int a = 0; a < 3; ++a) {
      out[a] = amp * (c[a][0] + c[a][1] * std::sin(2 * kPi * x[0] / l[0]) +
                      c[a][2] * std::cos(2 * kPi * x[1] / l[1]) + c[a][3] * std::sin(2 * kPi * x[2] / l[2]));
    }
    return out;
  };
}

double rel(double measured, double expected) {
  return std::abs(measured - expected) / std::max(std::abs(expected), 1e-300);
}

double max_diff(const Cochain& a, const Cochain& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<ModelSpec> all_models() {
  return {ModelSpec{Vacuum{}}, ModelSpec{Kerr{0.1, 0.05}}, ModelSpec{NonlocalDispersive{0.1, 0.002}},
          ModelSpec{Magnetoelectric{0.2}}};
}

std::shared_ptr<const Discretization> disc_of(const GridSpec& g, const MaterialMetric& m) {
  return std::make_shared<const Discretization>(Discretization::build(g, m));
}

MaterialMetric random_diagonal(Rng& rng) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  const double a = u(rng), b = u(rng), c = u(rng);
  return MaterialMetric(a, b, c);
}

const GridSpec kSmall{{8, 8, 8}, {0.125, 0.125, 0.125}};

struct Context {
  int trials;
  int grid_trials;
  std::uint64_t seed;
};

using CheckFn = std::function<double(const Context&)>;

double ext3_identity(const Context& c) {
  return ext3::verify_identities(ext3::Metric3::identity(), c.trials, c.seed).max_residual();
}

double ext3_diagonal(const Context& c) {
  Rng rng(c.seed);
  std::uniform_real_distribution<double> u(0.25, 4.0);
  double m = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto g = ext3::Metric3::diagonal(u(rng), u(rng), u(rng));
    m = std::max(m, ext3::verify_identities(g, std::max(1, c.trials / 10), c.seed + 1 + t).max_residual());
  }
  return m;
}

double d_squared(const Context&) {
  const auto cx = build_complex(kSmall);
  std::size_t nz = 0;
  for (int k = 0; k < 2; ++k) {
    nz += composition_nonzeros(cx.d[k], cx.d[k + 1]);
    nz += composition_nonzeros(cx.dual_d[k], cx.dual_d[k + 1]);
  }
  return static_cast<double>(nz);
}

double stokes(const Context& c) {
  const GridSpec g{{4, 4, 4}, {1, 1, 1}};
  const auto cx = build_complex(g);
  Rng rng(c.seed);
  double m = 0.0;
  for (int t = 0; t < c.grid_trials; ++t) {
    for (int k = 0; k < 3; ++k) {
      const Cochain a = random_cochain(g, Complex::primal, k, rng);
      const Cochain b = random_cochain(g, Complex::dual, 2 - k, rng);
      const double sign = (3 - k) % 2 == 0 ? 1.0 : -1.0;
      m = std::max(m, std::abs(pairing(cx.d[k].apply(a), b) - sign * pairing(a, cx.dual_d[2 - k].apply(b))));
    }
  }
  return m;
}

template <class F>
double over_metric_ops(const Context& c, F f) {
  const GridSpec g{{4, 5, 3}, {0.5, 0.75, 1.0}};
  Rng rng(c.seed);
  double m = 0.0;
  for (int t = 0; t < c.grid_trials; ++t) {
    const Discretization d = Discretization::build(g, random_diagonal(rng));
    m = std::max(m, f(d, rng));
  }
  return m;
}

double defining_relation(const Context& c) {
  return over_metric_ops(c, [](const Discretization& d, Rng& rng) {
    double m = 0.0;
    for (int k = 0; k <= 3; ++k) {
      const Cochain a = random_cochain(d.grid, Complex::primal, k, rng);
      const Cochain b = random_cochain(d.grid, Complex::primal, k, rng);
      m = std::max(m, std::abs(l2_inner(a, b, d.star[k]) - pairing(a, d.star[k].apply(b))));
    }
    return m;
  });
}

double star_roundtrip(const Context& c) {
  return over_metric_ops(c, [](const Discretization& d, Rng& rng) {
    double m = 0.0;
    for (int k = 0; k <= 3; ++k) {
      const Cochain a = random_cochain(d.grid, Complex::primal, k, rng);
      m = std::max(m, max_diff(d.star[k].apply_inverse(d.star[k].apply(a)), a));
    }
    return m;
  });
}

double codifferential_adjoint(const Context& c) {
  return over_metric_ops(c, [](const Discretization& d, Rng& rng) {
    double m = 0.0;
    for (int k = 1; k <= 3; ++k) {
      const Cochain a = random_cochain(d.grid, Complex::primal, k - 1, rng);
      const Cochain b = random_cochain(d.grid, Complex::primal, k, rng);
      const double lhs = l2_inner(d.complex.d[k - 1].apply(a), b, d.star[k]);
      const double rhs = l2_inner(a, d.codifferential(b), d.star[k - 1]);
      m = std::max(m, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    return m;
  });
}

double codifferential_squared(const Context& c) {
  return over_metric_ops(c, [](const Discretization& d, Rng& rng) {
    double m = 0.0;
    for (int k = 2; k <= 3; ++k) {
      const Cochain b = random_cochain(d.grid, Complex::primal, k, rng);
      m = std::max(m, d.codifferential(d.codifferential(b)).max_abs());
    }
    return m;
  });
}

struct Fields {
  std::shared_ptr<const Discretization> disc;
  Cochain e, b;
};

Fields smooth_fields(Rng& rng) {
  Fields f{disc_of(kSmall, random_diagonal(rng)), {}, {}};
  f.e = de_rham_map(kSmall, smooth_field(kSmall, rng, 1.0), Complex::primal, 1);
  f.b = de_rham_map(kSmall, smooth_field(kSmall, rng, 1.0), Complex::primal, 2);
  return f;
}

double gradient_fd(const Context& c) {
  Rng rng(c.seed);
  double m = 0.0;
  const double eps = 6.0554544523933395e-06;
  for (int t = 0; t < c.grid_trials; ++t) {
    const Fields f = smooth_fields(rng);
    const double h = kSmall.h[0];
    for (const auto& spec : all_models()) {
      const auto model = make_model(spec, f.disc);
      const Cochain ve = random_cochain(kSmall, Complex::primal, 1, rng, h);
      const Cochain vb = random_cochain(kSmall, Complex::primal, 2, rng, h * h);
      const double fde = (model->k_eval(f.e + eps * ve, f.b) - model->k_eval(f.e - eps * ve, f.b)) / (2 * eps);
      const double fdb = (model->k_eval(f.e, f.b + eps * vb) - model->k_eval(f.e, f.b - eps * vb)) / (2 * eps);
      const double ae = pairing(ve, model->dk_de(f.e, f.b));
      const double ab = pairing(vb, model->dk_db(f.e, f.b));
      m = std::max(m, ae == 0.0 ? std::abs(fde) : rel(fde, ae));
      m = std::max(m, ab == 0.0 ? std::abs(fdb) : rel(fdb, ab));
    }
  }
  return m;
}

double sym_residual(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

double hessian_symmetry(const Context& c) {
  Rng rng(c.seed);
  double m = 0.0;
  for (int t = 0; t < c.grid_trials; ++t) {
    const Fields f = smooth_fields(rng);
    for (const auto& spec : all_models()) {
      const auto model = make_model(spec, f.disc);
      const Cochain u = random_cochain(kSmall, Complex::primal, 1, rng);
      const Cochain v = random_cochain(kSmall, Complex::primal, 1, rng);
      const Cochain p = random_cochain(kSmall, Complex::primal, 2, rng);
      const Cochain q = random_cochain(kSmall, Complex::primal, 2, rng);
      m = std::max(m, sym_residual(pairing(u, model->hessian_action(f.e, f.b, HessianBlock::ee, v)),
                                   pairing(v, model->hessian_action(f.e, f.b, HessianBlock::ee, u))));
      m = std::max(m, sym_residual(pairing(p, model->hessian_action(f.e, f.b, HessianBlock::bb, q)),
                                   pairing(q, model->hessian_action(f.e, f.b, HessianBlock::bb, p))));
    }
  }
  return m;
}

double mixed_partials(const Context& c) {
  Rng rng(c.seed);
  double m = 0.0;
  for (int t = 0; t < c.grid_trials; ++t) {
    const Fields f = smooth_fields(rng);
    for (const auto& spec : all_models()) {
      const auto model = make_model(spec, f.disc);
      const Cochain u = random_cochain(kSmall, Complex::primal, 1, rng);
      const Cochain p = random_cochain(kSmall, Complex::primal, 2, rng);
      m = std::max(m, sym_residual(pairing(u, model->hessian_action(f.e, f.b, HessianBlock::be, p)),
                                   pairing(p, model->hessian_action(f.e, f.b, HessianBlock::eb, u))));
    }
  }
  return m;
}

double roundtrip(const Context& c) {
  Rng rng(c.seed);
  double m = 0.0;
  SolveOptions opts;
  opts.tol = 1e-10;
  for (int t = 0; t < c.grid_trials; ++t) {
    const Fields f = smooth_fields(rng);
    for (const auto& spec : all_models()) {
      const auto model = make_model(spec, f.disc);
      const Cochain d = model->d_from_e(f.e, f.b);
      Cochain r = model->d_from_e(model->e_from_db(d, f.b, opts), f.b);
      r -= d;
      m = std::max(m, r.max_abs());
    }
  }
  return m;
}

double kerr_scalar(const Context&) { return std::abs(kerr_scalar_root(1.0, 1.0, 2.0) - 1.0); }

double magnetoelectric_closed_form(const Context& c) {
  Rng rng(c.seed);
  double m = 0.0;
  SolveOptions opts;
  opts.tol = 1e-14;
  for (int t = 0; t < c.grid_trials; ++t) {
    const Fields f = smooth_fields(rng);
    const auto model = make_model(ModelSpec{Magnetoelectric{0.3}}, f.disc);
    const Cochain d = model->d_from_e(f.e, f.b);
    m = std::max(m, max_diff(model->e_from_db(d, f.b, opts), model->e_from_db_iterative(d, f.b, opts)));
  }
  return m;
}

FunctionalGradient random_gradient(const GridSpec& g, Rng& rng) {
  return {random_cochain(g, Complex::primal, 1, rng), random_cochain(g, Complex::dual, 1, rng)};
}

double bracket_antisymmetry(const Context& c) {
  const auto cx = build_complex(kSmall);
  Rng rng(c.seed);
  double m = 0.0;
  for (int t = 0; t < c.grid_trials; ++t) {
    const auto f = random_gradient(kSmall, rng);
    const auto g = random_gradient(kSmall, rng);
    m = std::max({m, std::abs(bracket(cx, f, g) + bracket(cx, g, f)), std::abs(bracket(cx, f, f))});
  }
  return m;
}

double bracket_metric_invariance(const Context& c) {
  Rng rng(c.seed);
  double m = 0.0;
  for (int t = 0; t < c.grid_trials; ++t) {
    const auto d1 = disc_of(kSmall, random_diagonal(rng));
    const auto d2 = disc_of(kSmall, random_diagonal(rng));
    const auto f = random_gradient(kSmall, rng);
    const auto g = random_gradient(kSmall, rng);
    m = std::max(m, std::abs(bracket(d1->complex, f, g) - bracket(d2->complex, f, g)));
  }
  return m;
}

double casimir_commute(const Context& c) {
  const GridSpec g{{4, 4, 4}, {0.25, 0.25, 0.25}};
  const auto cx = build_complex(g);
  Rng rng(c.seed);
  double m = 0.0;
  for (int t = 0; t < c.grid_trials; ++t) {
    const FunctionalGradient c1{-1.0 * cx.d[0].apply(random_cochain(g, Complex::primal, 0, rng)),
                                Cochain(g, Complex::dual, 1)};
    const FunctionalGradient c2{Cochain(g, Complex::primal, 1),
                                cx.dual_d[0].apply(random_cochain(g, Complex::dual, 0, rng))};
    const auto h = random_gradient(g, rng);
    m = std::max({m, std::abs(bracket(cx, c1, h)), std::abs(bracket(cx, c2, h))});
  }
  return m;
}

double jacobi(const Context& c) {
  const GridSpec g{{2, 2, 2}, {1, 1, 1}};
  const auto cx = build_complex(g);
  Rng rng(c.seed);
  SimState s = SimState::zero(g);
  s.dtilde = random_cochain(g, Complex::dual, 2, rng);
  s.b = random_cochain(g, Complex::primal, 2, rng);
  const std::size_t dim = 6 * g.cells();
  const double scale = 1.0 / static_cast<double>(dim);
  double m = 0.0;
  for (int t = 0; t < c.grid_trials; ++t) {
    const auto base = c.seed + 3 * static_cast<std::uint64_t>(t);
    m = std::max(m, jacobi_check(cx, QuadraticFunctional::random(dim, base + 1, scale),
                                 QuadraticFunctional::random(dim, base + 2, scale),
                                 QuadraticFunctional::random(dim, base + 3, scale), s));
  }
  return m;
}

double ham_gradient_fd(const Context& c) {
  Rng rng(c.seed);
  double m = 0.0;
  SolveOptions opts;
  opts.tol = 1e-14;
  const std::vector<ModelSpec> models{ModelSpec{Vacuum{}}, ModelSpec{Kerr{0.1, 0.5}},
                                      ModelSpec{NonlocalDispersive{0.1, 0.002}}, ModelSpec{Magnetoelectric{0.3}}};
  const int trials = std::max(1, c.grid_trials / 2);
  for (int t = 0; t < trials; ++t) {
    const auto disc = disc_of(kSmall, random_diagonal(rng));
    SimState s = SimState::zero(kSmall);
    s.dtilde = disc->complex.dual_d[1].apply(random_cochain(kSmall, Complex::dual, 1, rng, 0.05));
    s.b = disc->complex.d[1].apply(random_cochain(kSmall, Complex::primal, 1, rng, 0.05));
    const Cochain vd = random_cochain(kSmall, Complex::dual, 2, rng, 0.01);
    const Cochain vb = random_cochain(kSmall, Complex::primal, 2, rng, 0.01);
    for (const auto& spec : models) {
      const auto model = make_model(spec, disc);
      const auto gr = ham_gradient(*model, s, opts);
      const double eps = 1e-3;
      SimState p = s, q = s;
      p.dtilde.axpy(eps, vd);
      q.dtilde.axpy(-eps, vd);
      const double fdd = (hamiltonian(*model, p, opts) - hamiltonian(*model, q, opts)) / (2 * eps);
      m = std::max(m, rel(fdd, pairing(gr.wrt_d, vd)));
      p = s;
      q = s;
      p.b.axpy(eps, vb);
      q.b.axpy(-eps, vb);
      const double fdb = (hamiltonian(*model, p, opts) - hamiltonian(*model, q, opts)) / (2 * eps);
      m = std::max(m, rel(fdb, pairing(vb, gr.wrt_b)));
    }
  }
  return m;
}

struct Check {
  const char* name;
  double tolerance;
  CheckFn fn;
};

const std::vector<Check>& checks() {
  static const std::vector<Check> all{
      {"exterior3.identities.identity_metric", 1e-12, ext3_identity},
      {"exterior3.identities.diagonal_metric", 1e-12, ext3_diagonal},
      {"complex.d_squared", 0.0, d_squared},
      {"complex.stokes", 1e-14, stokes},
      {"metric_ops.defining_relation", 1e-14, defining_relation},
      {"metric_ops.star_roundtrip", 1e-14, star_roundtrip},
      {"metric_ops.codifferential_adjoint", 1e-13, codifferential_adjoint},
      {"metric_ops.codifferential_squared", 1e-13, codifferential_squared},
      {"constitutive.gradient_fd", 1e-6, gradient_fd},
      {"constitutive.hessian_symmetry", 1e-12, hessian_symmetry},
      {"constitutive.mixed_partials", 1e-12, mixed_partials},
      {"constitutive.roundtrip", 1e-10, roundtrip},
      {"constitutive.kerr_scalar_root", 1e-12, kerr_scalar},
      {"constitutive.magnetoelectric_closed_form", 1e-12, magnetoelectric_closed_form},
      {"dynamics.bracket_antisymmetry", 0.0, bracket_antisymmetry},
      {"dynamics.bracket_metric_invariance", 0.0, bracket_metric_invariance},
      {"dynamics.casimir_commute", 1e-13, casimir_commute},
      {"dynamics.jacobi", 1e-12, jacobi},
      {"dynamics.ham_gradient_fd", 1e-5, ham_gradient_fd},
  };
  return all;
}

}  // namespace

std::vector<std::string> verify_check_names() {
  std::vector<std::string> out;
  for (const auto& c : checks()) out.emplace_back(c.name);
  return out;
}

std::vector<CheckResult> verify(const VerifyOptions& opts) {
  if (opts.trials < 1) throw ValidationError("verify.trials: trials >= 1 required");
  if (opts.check) {
    const auto names = verify_check_names();
    if (std::find(names.begin(), names.end(), *opts.check) == names.end()) {
      throw ValidationError("verify.check: unknown check '" + *opts.check + "'");
    }
  }
  const Context ctx{opts.trials, std::max(1, opts.trials / 10), opts.seed};
  std::vector<CheckResult> out;
  for (const auto& c : checks()) {
    if (opts.check && *opts.check != c.name) continue;
    out.push_back(CheckResult{c.name, c.fn(ctx), c.tolerance});
  }
  return out;
}

std::string verify_report_json(const VerifyOptions& opts, const std::vector<CheckResult>& results) {
  nlohmann::ordered_json j;
  j["seed"] = opts.seed;
  j["trials"] = opts.trials;
  auto arr = nlohmann::ordered_json::array();
  bool pass = true;
  for (const auto& r : results) {
    arr.push_back({{"name", r.name}, {"max_residual", r.max_residual}, {"tolerance", r.tolerance},
                   {"pass", r.pass()}});
    pass = pass && r.pass();
  }
  j["checks"] = arr;
  j["pass"] = pass;
  return j.dump(2) + "\n";
}

}  // namespace splitmax::cli
