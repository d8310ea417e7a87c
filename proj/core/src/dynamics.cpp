#include "splitmax/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "splitmax/derham.hpp"
#include "splitmax/error.hpp"
#include "splitmax/krylov.hpp"

namespace splitmax {
namespace {

void require_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("integrator.dt: dt > 0 required");
}

void require_linear(const ConstitutiveModel& model, const char* scheme) {
  if (!model.spec().linear()) {
    throw ValidationError(std::string("integrator.scheme: ") + scheme +
                          " requires a linear model (vacuum or nonlocal_dispersive)");
  }
}

void add_stats(StepStats* stats, const SolveStats& s) {
  if (!stats) return;
  stats->newton_iterations += s.newton_iterations;
  stats->krylov_iterations += s.krylov_iterations;
  stats->residual = std::max(stats->residual, s.residual);
}

/// y = P x for the constant Poisson operator on flattened gradients.
std::vector<double> poisson_apply(const DeRhamComplex& complex, std::span<const double> x, double c,
                                  double fourpi) {
  const std::size_t m = x.size() / 2;
  std::vector<double> y(x.size(), 0.0);
  std::span<double> yd(y.data(), m), yb(y.data() + m, m);
  complex.d[1].apply_transpose(x.subspan(m, m), yd);
  complex.d[1].apply(x.subspan(0, m), yb);
  const double s = fourpi * c;
  for (std::size_t i = 0; i < m; ++i) {
    yd[i] *= s;
    yb[i] *= -s;
  }
  return y;
}

std::vector<double> matvec(const QuadraticFunctional& f, std::span<const double> x) {
  std::vector<double> y(f.dim, 0.0);
  for (std::size_t i = 0; i < f.dim; ++i) {
    const double* row = f.hessian.data() + i * f.dim;
    double acc = 0.0;
    for (std::size_t j = 0; j < f.dim; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

}  // namespace

SimState SimState::zero(const GridSpec& grid) {
  return SimState{Cochain(grid, Complex::dual, 2), Cochain(grid, Complex::primal, 2), 0.0};
}

void SimState::validate() const {
  dtilde.require(Complex::dual, 2);
  b.require(Complex::primal, 2);
  if (dtilde.grid() != b.grid()) throw MismatchError("state fields on different grids");
}

double hamiltonian(const ConstitutiveModel& model, const SimState& s, const SolveOptions& opts) {
  s.validate();
  const auto& disc = model.discretization();
  const Cochain e = model.e_from_db(s.dtilde, s.b, opts);
  const double quad = dot(e.values(), disc.star[1].apply(e).values()) +
                      dot(s.b.values(), disc.star[2].apply(s.b).values());
  return model.k_eval(e, s.b) - pairing(e, model.dk_de(e, s.b)) + quad / (2.0 * model.spec().fourpi);
}

namespace {

// pairing(x, A y) summed entry by entry with error-free products and compensated sums.
double incidence_form(const IncidenceOperator& a, const Cochain& x, const Cochain& y) {
  if (x.grid() != a.grid() || x.complex() == a.target().complex || x.degree() != 3 - a.target().degree ||
      y.grid() != a.grid() || y.complex() != a.source().complex || y.degree() != a.source().degree) {
    throw MismatchError("bracket: gradient does not match the complex");
  }
  const auto rp = a.row_ptr();
  const auto ci = a.col_index();
  const auto v = a.values();
  double sum = 0.0, comp = 0.0;
  auto add = [&](double t) {
    const double s = sum + t;
    const double bp = s - sum;
    comp += (sum - (s - bp)) + (t - bp);
    sum = s;
  };
  for (std::size_t r = 0; r + 1 < rp.size(); ++r) {
    for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) {
      const double p = v[k] * x[r] * y[ci[k]];
      const double e = std::fma(v[k] * x[r], y[ci[k]], -p);
      add(p);
      comp += e;
    }
  }
  return sum + comp;
}

}  // namespace

double bracket(const DeRhamComplex& complex, const FunctionalGradient& f, const FunctionalGradient& g,
               double c, double fourpi) {
  const double a = incidence_form(complex.dual_d[1], f.wrt_d, g.wrt_b);
  const double b = incidence_form(complex.dual_d[1], g.wrt_d, f.wrt_b);
  return fourpi * c * (a - b);
}

FunctionalGradient ham_gradient(const ConstitutiveModel& model, const SimState& s, const SolveOptions& opts) {
  s.validate();
  const double inv = 1.0 / model.spec().fourpi;
  Cochain e = model.e_from_db(s.dtilde, s.b, opts);
  Cochain h = model.h_from_b(e, s.b);
  e *= inv;
  h *= inv;
  return FunctionalGradient{std::move(e), std::move(h)};
}

Rates rhs(const ConstitutiveModel& model, const SimState& s, const SolveOptions& opts) {
  s.validate();
  const auto& cx = model.discretization().complex;
  const double c = model.spec().c;
  const Cochain e = model.e_from_db(s.dtilde, s.b, opts);
  const Cochain h = model.h_from_b(e, s.b);
  Cochain dd = cx.dual_d[1].apply(h);
  dd *= c;
  Cochain db = cx.d[1].apply(e);
  db *= -c;
  return Rates{std::move(dd), std::move(db)};
}

SimState step_midpoint(const ConstitutiveModel& model, const SimState& s, double dt, double tol,
                       StepStats* stats) {
  s.validate();
  require_dt(dt);
  const auto& disc = model.discretization();
  const auto& d1 = disc.complex.d[1];
  const double c = model.spec().c;
  const double fp = model.spec().fourpi;
  const double kappa = 0.5 * dt * c;
  const bool linear = model.spec().linear();
  const bool symmetric = !std::holds_alternative<Magnetoelectric>(model.spec().variant);
  const auto s1 = disc.star[1].coefficients();
  const auto s2 = disc.star[2].coefficients();
  const std::size_t m = s.dtilde.size();

  StepStats local;
  Cochain ebar = disc.star[1].apply_inverse(s.dtilde);
  if (!linear) {
    SolveOptions guess_opts;
    guess_opts.tol = std::max(tol, 1e-8);
    SolveStats gs;
    ebar = model.e_from_db(s.dtilde, s.b, guess_opts, &gs);
    local.newton_iterations += gs.newton_iterations;
    local.krylov_iterations += gs.krylov_iterations;
  }

  auto b_mid = [&](const Cochain& e) {
    Cochain bm = d1.apply(e);
    bm *= -kappa;
    bm += s.b;
    return bm;
  };

  Cochain bm = b_mid(ebar);
  Cochain hbar(disc.grid, Complex::dual, 1);
  Cochain dir(disc.grid, Complex::primal, 1);
  const krylov::LinearOperator jac = [&](std::span<const double> x, std::span<double> y) {
    std::copy(x.begin(), x.end(), dir.values().begin());
    const Cochain dv = d1.apply(dir);
    const Cochain hee = model.hessian_action(ebar, bm, HessianBlock::ee, dir);
    // t = kappa (S2 + fp H_bb) d1 v - fp H_eb v, then y += kappa d1^T t
    Cochain t(disc.grid, Complex::dual, 1);
    for (std::size_t i = 0; i < m; ++i) t[i] = kappa * s2[i] * dv[i];
    if (!linear) {
      t.axpy(kappa * fp, model.hessian_action(ebar, bm, HessianBlock::bb, dv));
      t.axpy(-fp, model.hessian_action(ebar, bm, HessianBlock::eb, dir));
    }
    d1.apply_transpose(t.values(), y);
    for (std::size_t i = 0; i < m; ++i) y[i] = s1[i] * x[i] - fp * hee[i] + kappa * y[i];
    if (!linear) {
      const Cochain hbe = model.hessian_action(ebar, bm, HessianBlock::be, dv);
      for (std::size_t i = 0; i < m; ++i) y[i] += fp * kappa * hbe[i];
    }
  };

  std::vector<double> delta(m);
  std::vector<double> curl_h(m);
  for (int it = 0;; ++it) {
    hbar = model.h_from_b(ebar, bm);
    Cochain r = model.d_from_e(ebar, bm);
    r -= s.dtilde;
    d1.apply_transpose(hbar.values(), curl_h);
    for (std::size_t i = 0; i < m; ++i) r[i] -= kappa * curl_h[i];
    local.residual = r.max_abs();
    if (local.residual <= tol) break;
    if (!std::isfinite(local.residual) || it >= 50) {
      if (stats) *stats = local;
      throw DivergenceError("midpoint stage did not converge", local.residual, it);
    }
    ++local.newton_iterations;
    r *= -1.0;
    std::fill(delta.begin(), delta.end(), 0.0);
    krylov::Options kopt;
    kopt.rtol = 0.0;
    kopt.atol = 0.1 * tol;
    kopt.max_iter = 1000;
    const auto kr = symmetric ? krylov::conjugate_gradient(jac, r.values(), delta, kopt)
                              : krylov::gmres(jac, r.values(), delta, kopt);
    local.krylov_iterations += kr.iterations;
    for (std::size_t i = 0; i < m; ++i) ebar[i] += delta[i];
    bm = b_mid(ebar);
  }

  SimState out = s;
  const double dtc = dt * c;
  for (std::size_t i = 0; i < m; ++i) out.dtilde[i] += dtc * curl_h[i];
  const Cochain curl_e = d1.apply(ebar);
  out.b.axpy(-dtc, curl_e);
  out.t = s.t + dt;
  if (stats) {
    stats->newton_iterations += local.newton_iterations;
    stats->krylov_iterations += local.krylov_iterations;
    stats->residual = std::max(stats->residual, local.residual);
  }
  return out;
}

SimState step_splitting_linear(const ConstitutiveModel& model, const SimState& s, double dt,
                               const SolveOptions& opts, StepStats* stats) {
  s.validate();
  require_dt(dt);
  require_linear(model, "splitting");
  const auto& d1 = model.discretization().complex.d[1];
  const double c = model.spec().c;
  const double kappa = 0.5 * dt * c;

  SolveStats ss;
  SimState out = s;
  const Cochain e = model.e_from_db(s.dtilde, s.b, opts, &ss);
  add_stats(stats, ss);
  out.b.axpy(-kappa, d1.apply(e));
  const Cochain h = model.h_from_b(e, out.b);
  std::vector<double> curl_h(out.dtilde.size());
  d1.apply_transpose(h.values(), curl_h);
  for (std::size_t i = 0; i < curl_h.size(); ++i) out.dtilde[i] += dt * c * curl_h[i];
  const Cochain e_new = model.e_from_db(out.dtilde, out.b, opts, &ss);
  add_stats(stats, ss);
  out.b.axpy(-kappa, d1.apply(e_new));
  out.t = s.t + dt;
  return out;
}

SimState step_single_complex(const ConstitutiveModel& model, const SimState& s, double dt,
                             const SolveOptions& opts, StepStats* stats) {
  s.validate();
  require_dt(dt);
  require_linear(model, "single_complex");
  const auto& disc = model.discretization();
  const auto& d1 = disc.complex.d[1];
  const double c = model.spec().c;
  const double kappa = 0.5 * dt * c;

  SolveStats ss;
  Cochain d_primal = disc.star[1].apply_inverse(s.dtilde);
  Cochain b = s.b;
  const Cochain e = model.e_from_db(disc.star[1].apply(d_primal), b, opts, &ss);
  add_stats(stats, ss);
  b.axpy(-kappa, d1.apply(e));
  // h2 = star2^{-1} h~; for a linear model h~ = star2 b.
  const Cochain h2 = disc.star[2].apply_inverse(model.h_from_b(e, b));
  d_primal.axpy(dt * c, disc.codifferential(h2));
  SimState out{disc.star[1].apply(d_primal), std::move(b), s.t + dt};
  const Cochain e_new = model.e_from_db(out.dtilde, out.b, opts, &ss);
  add_stats(stats, ss);
  out.b.axpy(-kappa, d1.apply(e_new));
  return out;
}

std::pair<double, double> casimirs(const DeRhamComplex& complex, const SimState& s) {
  s.validate();
  return {complex.dual_d[2].apply(s.dtilde).max_abs(), complex.d[2].apply(s.b).max_abs()};
}

double default_dt(const ConstitutiveModel& model) {
  const auto& h = model.grid().h;
  const double hmin = std::min({h[0], h[1], h[2]});
  return 0.5 * hmin / (model.spec().c * std::sqrt(3.0) * model.speed_factor());
}

QuadraticFunctional QuadraticFunctional::random(std::size_t dim, unsigned long long seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  QuadraticFunctional f;
  f.dim = dim;
  f.hessian.assign(dim * dim, 0.0);
  f.linear.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const double v = u(rng);
      f.hessian[i * dim + j] = v;
      f.hessian[j * dim + i] = v;
    }
  }
  for (auto& v : f.linear) v = u(rng);
  return f;
}

double QuadraticFunctional::value(std::span<const double> z) const {
  const auto qz = matvec(*this, z);
  double v = 0.0;
  for (std::size_t i = 0; i < dim; ++i) v += z[i] * (0.5 * qz[i] + linear[i]);
  return v;
}

std::vector<double> QuadraticFunctional::gradient(std::span<const double> z) const {
  auto g = matvec(*this, z);
  for (std::size_t i = 0; i < dim; ++i) g[i] += linear[i];
  return g;
}

FunctionalGradient to_gradient(const GridSpec& grid, std::span<const double> flat) {
  const std::size_t m = entity_count(grid, Complex::primal, 1);
  if (flat.size() != 2 * m) throw MismatchError("flattened gradient has the wrong length");
  return FunctionalGradient{
      Cochain(grid, Complex::primal, 1, std::vector<double>(flat.begin(), flat.begin() + m)),
      Cochain(grid, Complex::dual, 1, std::vector<double>(flat.begin() + m, flat.end()))};
}

std::vector<double> flatten(const SimState& s) {
  s.validate();
  std::vector<double> z(s.dtilde.data());
  z.insert(z.end(), s.b.data().begin(), s.b.data().end());
  return z;
}

double jacobi_check(const DeRhamComplex& complex, const QuadraticFunctional& f,
                    const QuadraticFunctional& g, const QuadraticFunctional& h, const SimState& s,
                    double c, double fourpi) {
  const auto z = flatten(s);
  if (f.dim != z.size() || g.dim != z.size() || h.dim != z.size()) {
    throw MismatchError("jacobi_check: functional dimension does not match the state");
  }
  const GridSpec& grid = s.b.grid();
  // Gradient of {A, B} for constant-Hessian A, B: Q_A P grad B - Q_B P grad A.
  auto nested = [&](const QuadraticFunctional& a, const QuadraticFunctional& b,
                    const QuadraticFunctional& outer) {
    const auto ga = a.gradient(z);
    const auto gb = b.gradient(z);
    const auto x = matvec(a, poisson_apply(complex, gb, c, fourpi));
    const auto y = matvec(b, poisson_apply(complex, ga, c, fourpi));
    std::vector<double> gab(z.size());
    for (std::size_t i = 0; i < gab.size(); ++i) gab[i] = x[i] - y[i];
    return bracket(complex, to_gradient(grid, gab), to_gradient(grid, outer.gradient(z)), c, fourpi);
  };
  return std::abs(nested(f, g, h) + nested(g, h, f) + nested(h, f, g));
}

}  // namespace splitmax
