#include <cmath>

#include "models.hpp"
#include "splitmax/derham.hpp"
#include "splitmax/error.hpp"
#include "stencil.hpp"

namespace splitmax::detail {
namespace {

Cochain as_dual(Cochain primal, int dual_degree) {
  return Cochain(primal.grid(), Complex::dual, dual_degree, std::move(primal.data()));
}

}  // namespace

KerrModel::KerrModel(ModelSpec spec, std::shared_ptr<const Discretization> disc)
    : ConstitutiveModel(std::move(spec), std::move(disc)), p_(std::get<Kerr>(this->spec().variant)) {
  if (!std::isfinite(p_.chi1) || !(1.0 + this->spec().fourpi * p_.chi1 > 0.0)) {
    throw ValidationError("model.chi1: 1 + fourpi*chi1 > 0 required");
  }
  if (!std::isfinite(p_.chi3) || p_.chi3 < 0.0) throw ValidationError("model.chi3: chi3 >= 0 required");
}

double KerrModel::k_eval(const Cochain& e, const Cochain&) const {
  e.require(Complex::primal, 1);
  const auto& m = discretization().metric;
  const double w = m.sqrt_det() * grid().cell_volume();
  const auto ebar = reconstruct_at_centers(e);
  double k = 0.0;
  for (const auto& v : ebar) {
    const double n2 = m.inverse(0) * v[0] * v[0] + m.inverse(1) * v[1] * v[1] + m.inverse(2) * v[2] * v[2];
    k -= w * (0.5 * p_.chi1 * n2 + 0.25 * p_.chi3 * n2 * n2);
  }
  return k;
}

Cochain KerrModel::dk_de(const Cochain& e, const Cochain&) const {
  e.require(Complex::primal, 1);
  const auto& m = discretization().metric;
  const double w = m.sqrt_det() * grid().cell_volume();
  auto ebar = reconstruct_at_centers(e);
  for (auto& v : ebar) {
    const double n2 = m.inverse(0) * v[0] * v[0] + m.inverse(1) * v[1] * v[1] + m.inverse(2) * v[2] * v[2];
    const double f = -w * (p_.chi1 + p_.chi3 * n2);
    for (int i = 0; i < 3; ++i) v[i] *= f * m.inverse(i);
  }
  return as_dual(scatter_from_centers(grid(), Complex::primal, 1, ebar), 2);
}

Cochain KerrModel::dk_db(const Cochain&, const Cochain& b) const {
  b.require(Complex::primal, 2);
  return zero_dual(1);
}

Cochain KerrModel::hessian_action(const Cochain& e, const Cochain&, HessianBlock which,
                                  const Cochain& v) const {
  if (which == HessianBlock::be) return zero_dual(2);
  if (which != HessianBlock::ee) return zero_dual(1);
  e.require(Complex::primal, 1);
  v.require(Complex::primal, 1);
  const auto& m = discretization().metric;
  const double w = m.sqrt_det() * grid().cell_volume();
  const auto ebar = reconstruct_at_centers(e);
  auto vbar = reconstruct_at_centers(v);
  for (std::size_t s = 0; s < ebar.size(); ++s) {
    const auto& x = ebar[s];
    auto& y = vbar[s];
    double n2 = 0.0, xy = 0.0;
    for (int i = 0; i < 3; ++i) {
      n2 += m.inverse(i) * x[i] * x[i];
      xy += m.inverse(i) * x[i] * y[i];
    }
    const double f = p_.chi1 + p_.chi3 * n2;
    for (int i = 0; i < 3; ++i) y[i] = -w * m.inverse(i) * (f * y[i] + 2.0 * p_.chi3 * xy * x[i]);
  }
  return as_dual(scatter_from_centers(grid(), Complex::primal, 1, vbar), 2);
}

Cochain KerrModel::pointwise_guess(const Cochain& dtilde) const {
  dtilde.require(Complex::dual, 2);
  const auto& m = discretization().metric;
  const double a = 1.0 + spec().fourpi * p_.chi1;
  const double b3 = spec().fourpi * p_.chi3;
  const double g = m.sqrt_det() * m.sqrt_det();
  const auto dbar = reconstruct_at_centers(dtilde);
  const std::size_t n = grid().cells();
  std::array<std::vector<double>, 3> ecell;
  for (auto& c : ecell) c.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto& d = dbar[s];
    const double q = std::sqrt((d[0] * d[0] * m[0] + d[1] * d[1] * m[1] + d[2] * d[2] * m[2]) / g);
    const double rho = kerr_scalar_root(a, b3, q);
    const double f = q > 0.0 ? rho / (m.sqrt_det() * q) : 0.0;
    for (int i = 0; i < 3; ++i) ecell[i][s] = d[i] * m[i] * f;
  }
  Cochain e(grid(), Complex::primal, 1);
  for (int i = 0; i < 3; ++i) {
    const auto edges = cells_to_edges(grid(), ecell[i]);
    for (std::size_t s = 0; s < n; ++s) e[i * n + s] = edges[i * n + s] * grid().h[i];
  }
  return e;
}

Cochain KerrModel::e_from_db(const Cochain& dtilde, const Cochain& b, const SolveOptions& opts,
                             SolveStats* stats) const {
  return newton_solve(dtilde, b, pointwise_guess(dtilde), opts, stats);
}

double KerrModel::speed_factor() const {
  return std::max(1.0, 1.0 / std::sqrt(1.0 + spec().fourpi * p_.chi1));
}

}  // namespace splitmax::detail
