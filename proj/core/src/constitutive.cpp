#include "splitmax/constitutive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "models.hpp"
#include "splitmax/error.hpp"
#include "splitmax/krylov.hpp"

namespace splitmax {

std::string ModelSpec::name() const {
  struct Visitor {
    std::string operator()(const Vacuum&) const { return "vacuum"; }
    std::string operator()(const Kerr&) const { return "kerr"; }
    std::string operator()(const NonlocalDispersive&) const { return "nonlocal_dispersive"; }
    std::string operator()(const Magnetoelectric&) const { return "magnetoelectric"; }
  };
  return std::visit(Visitor{}, variant);
}

bool ModelSpec::linear() const noexcept {
  return std::holds_alternative<Vacuum>(variant) || std::holds_alternative<NonlocalDispersive>(variant);
}

Cochain ConstitutiveModel::d_from_e(const Cochain& e, const Cochain& b) const {
  Cochain d = disc_->star[1].apply(e);
  d.axpy(-spec_.fourpi, dk_de(e, b));
  return d;
}

Cochain ConstitutiveModel::h_from_b(const Cochain& e, const Cochain& b) const {
  Cochain h = disc_->star[2].apply(b);
  h.axpy(spec_.fourpi, dk_db(e, b));
  return h;
}

Cochain ConstitutiveModel::e_from_db(const Cochain& dtilde, const Cochain& b, const SolveOptions& opts,
                                     SolveStats* stats) const {
  return e_from_db_iterative(dtilde, b, opts, stats);
}

Cochain ConstitutiveModel::e_from_db_iterative(const Cochain& dtilde, const Cochain& b,
                                               const SolveOptions& opts, SolveStats* stats) const {
  dtilde.require(Complex::dual, 2);
  return newton_solve(dtilde, b, disc_->star[1].apply_inverse(dtilde), opts, stats);
}

Cochain ConstitutiveModel::newton_solve(const Cochain& dtilde, const Cochain& b, Cochain e,
                                        const SolveOptions& opts, SolveStats* stats) const {
  dtilde.require(Complex::dual, 2);
  b.require(Complex::primal, 2);
  if (dtilde.grid() != grid() || b.grid() != grid()) throw MismatchError("state on a different grid");

  SolveStats local;
  const auto s1 = disc_->star[1].coefficients();
  Cochain dir(grid(), Complex::primal, 1);
  const krylov::LinearOperator jac = [&](std::span<const double> x, std::span<double> y) {
    std::copy(x.begin(), x.end(), dir.values().begin());
    const Cochain hv = hessian_action(e, b, HessianBlock::ee, dir);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = s1[i] * x[i] - spec_.fourpi * hv[i];
  };

  for (int it = 0;; ++it) {
    Cochain r = d_from_e(e, b);
    r -= dtilde;
    local.residual = r.max_abs();
    local.newton_iterations = it;
    if (local.residual <= opts.tol) break;
    if (!std::isfinite(local.residual) || it >= opts.max_iter) {
      if (stats) *stats = local;
      throw DivergenceError("constitutive inversion did not converge", local.residual, it);
    }
    r *= -1.0;
    std::vector<double> delta(r.size(), 0.0);
    krylov::Options kopt;
    kopt.rtol = 1e-12;
    kopt.atol = 1e-3 * opts.tol;
    kopt.max_iter = opts.max_krylov;
    const auto kr = krylov::conjugate_gradient(jac, r.values(), delta, kopt);
    local.krylov_iterations += kr.iterations;
    for (std::size_t i = 0; i < delta.size(); ++i) e[i] += delta[i];
  }
  if (stats) *stats = local;
  return e;
}

double kerr_scalar_root(double a, double b, double q) {
  if (!(a > 0.0) || b < 0.0) throw NotInvertibleError();
  if (q <= 0.0) return 0.0;
  // Newton from the linear root, which bounds the root from above; the iteration
  // then decreases monotonically.
  double rho = q / a;
  for (int it = 0; it < 100; ++it) {
    const double jac = a + 3.0 * b * rho * rho;
    if (!(jac > 0.0)) throw NotInvertibleError();
    const double step = (a * rho + b * rho * rho * rho - q) / jac;
    rho -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * rho) break;
  }
  return rho;
}

double laplacian_max_eigenvalue(const GridSpec& grid, const MaterialMetric& metric) {
  double lam = 0.0;
  for (int j = 0; j < 3; ++j) {
    double s2 = 0.0;
    for (int m = 0; m < grid.n[j]; ++m) {
      const double s = std::sin(std::numbers::pi * m / grid.n[j]);
      s2 = std::max(s2, s * s);
    }
    lam += 4.0 * metric.inverse(j) / (grid.h[j] * grid.h[j]) * s2;
  }
  return lam;
}

std::unique_ptr<ConstitutiveModel> make_model(const ModelSpec& spec,
                                              std::shared_ptr<const Discretization> disc) {
  if (!disc) throw ValidationError("model: discretization required");
  if (!(spec.c > 0.0) || !std::isfinite(spec.c)) throw ValidationError("units.c: c > 0 required");
  if (!(spec.fourpi > 0.0) || !std::isfinite(spec.fourpi)) {
    throw ValidationError("units.fourpi: fourpi > 0 required");
  }
  struct Visitor {
    const ModelSpec& spec;
    std::shared_ptr<const Discretization>& disc;
    std::unique_ptr<ConstitutiveModel> operator()(const Vacuum&) const {
      return std::make_unique<detail::VacuumModel>(spec, disc);
    }
    std::unique_ptr<ConstitutiveModel> operator()(const Kerr&) const {
      return std::make_unique<detail::KerrModel>(spec, disc);
    }
    std::unique_ptr<ConstitutiveModel> operator()(const NonlocalDispersive&) const {
      return std::make_unique<detail::DispersiveModel>(spec, disc);
    }
    std::unique_ptr<ConstitutiveModel> operator()(const Magnetoelectric&) const {
      return std::make_unique<detail::MagnetoelectricModel>(spec, disc);
    }
  };
  return std::visit(Visitor{spec, disc}, spec.variant);
}

namespace detail {

double VacuumModel::k_eval(const Cochain&, const Cochain&) const { return 0.0; }

Cochain VacuumModel::dk_de(const Cochain& e, const Cochain&) const {
  e.require(Complex::primal, 1);
  return zero_dual(2);
}

Cochain VacuumModel::dk_db(const Cochain&, const Cochain& b) const {
  b.require(Complex::primal, 2);
  return zero_dual(1);
}

Cochain VacuumModel::hessian_action(const Cochain&, const Cochain&, HessianBlock which,
                                    const Cochain&) const {
  return zero_dual(which == HessianBlock::ee || which == HessianBlock::be ? 2 : 1);
}

Cochain VacuumModel::e_from_db(const Cochain& dtilde, const Cochain& b, const SolveOptions&,
                               SolveStats* stats) const {
  b.require(Complex::primal, 2);
  Cochain e = discretization().star[1].apply_inverse(dtilde);
  if (stats) *stats = SolveStats{};
  return e;
}

}  // namespace detail
}  // namespace splitmax
