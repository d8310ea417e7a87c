#include <cmath>

#include "models.hpp"
#include "splitmax/derham.hpp"
#include "splitmax/error.hpp"
#include "stencil.hpp"

namespace splitmax::detail {

MagnetoelectricModel::MagnetoelectricModel(ModelSpec spec, std::shared_ptr<const Discretization> disc)
    : ConstitutiveModel(std::move(spec), std::move(disc)),
      p_(std::get<Magnetoelectric>(this->spec().variant)) {
  if (!std::isfinite(p_.alpha) || p_.alpha < 0.0) throw ValidationError("model.alpha: alpha >= 0 required");
}

std::vector<double> MagnetoelectricModel::b_norm2(const Cochain& b) const {
  b.require(Complex::primal, 2);
  const auto& m = discretization().metric;
  const double g = m.sqrt_det() * m.sqrt_det();
  const auto bbar = reconstruct_at_centers(b);
  std::vector<double> out(bbar.size());
  for (std::size_t s = 0; s < bbar.size(); ++s) {
    const auto& v = bbar[s];
    out[s] = (m[0] * v[0] * v[0] + m[1] * v[1] * v[1] + m[2] * v[2] * v[2]) / g;
  }
  return out;
}

std::vector<double> MagnetoelectricModel::edge_energy(const Cochain& e, const Cochain& v) const {
  e.require(Complex::primal, 1);
  v.require(Complex::primal, 1);
  const auto s1 = discretization().star[1].coefficients();
  std::vector<double> x(e.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = s1[i] * e[i] * v[i];
  return edges_to_cells(grid(), x);
}

double MagnetoelectricModel::k_eval(const Cochain& e, const Cochain& b) const {
  const auto w = edge_energy(e, e);
  const auto gamma = b_norm2(b);
  double k = 0.0;
  for (std::size_t s = 0; s < w.size(); ++s) k += w[s] * gamma[s];
  return -0.5 * p_.alpha * k;
}

Cochain MagnetoelectricModel::dk_de(const Cochain& e, const Cochain& b) const {
  e.require(Complex::primal, 1);
  const auto beta = cells_to_edges(grid(), b_norm2(b));
  const auto s1 = discretization().star[1].coefficients();
  Cochain out(grid(), Complex::dual, 2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -p_.alpha * beta[i] * s1[i] * e[i];
  return out;
}

Cochain MagnetoelectricModel::dk_db(const Cochain& e, const Cochain& b) const {
  b.require(Complex::primal, 2);
  const auto& m = discretization().metric;
  const double g = m.sqrt_det() * m.sqrt_det();
  const auto w = edge_energy(e, e);
  auto bbar = reconstruct_at_centers(b);
  for (std::size_t s = 0; s < bbar.size(); ++s) {
    for (int i = 0; i < 3; ++i) bbar[s][i] *= -p_.alpha * w[s] * m[i] / g;
  }
  Cochain out = scatter_from_centers(grid(), Complex::primal, 2, bbar);
  return Cochain(grid(), Complex::dual, 1, std::move(out.data()));
}

Cochain MagnetoelectricModel::hessian_action(const Cochain& e, const Cochain& b, HessianBlock which,
                                             const Cochain& v) const {
  const auto& m = discretization().metric;
  const double g = m.sqrt_det() * m.sqrt_det();
  const auto s1 = discretization().star[1].coefficients();
  switch (which) {
    case HessianBlock::ee: {
      v.require(Complex::primal, 1);
      const auto beta = cells_to_edges(grid(), b_norm2(b));
      Cochain out(grid(), Complex::dual, 2);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = -p_.alpha * beta[i] * s1[i] * v[i];
      return out;
    }
    case HessianBlock::be: {
      v.require(Complex::primal, 2);
      const auto bbar = reconstruct_at_centers(b);
      const auto vbar = reconstruct_at_centers(v);
      std::vector<double> dgamma(bbar.size());
      for (std::size_t s = 0; s < bbar.size(); ++s) {
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) acc += m[i] * bbar[s][i] * vbar[s][i];
        dgamma[s] = 2.0 * acc / g;
      }
      const auto dbeta = cells_to_edges(grid(), dgamma);
      Cochain out(grid(), Complex::dual, 2);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = -p_.alpha * dbeta[i] * s1[i] * e[i];
      return out;
    }
    case HessianBlock::eb: {
      const auto dw = edge_energy(e, v);
      auto bbar = reconstruct_at_centers(b);
      for (std::size_t s = 0; s < bbar.size(); ++s) {
        for (int i = 0; i < 3; ++i) bbar[s][i] *= -2.0 * p_.alpha * dw[s] * m[i] / g;
      }
      Cochain out = scatter_from_centers(grid(), Complex::primal, 2, bbar);
      return Cochain(grid(), Complex::dual, 1, std::move(out.data()));
    }
    case HessianBlock::bb: {
      v.require(Complex::primal, 2);
      const auto w = edge_energy(e, e);
      auto vbar = reconstruct_at_centers(v);
      for (std::size_t s = 0; s < vbar.size(); ++s) {
        for (int i = 0; i < 3; ++i) vbar[s][i] *= -p_.alpha * w[s] * m[i] / g;
      }
      Cochain out = scatter_from_centers(grid(), Complex::primal, 2, vbar);
      return Cochain(grid(), Complex::dual, 1, std::move(out.data()));
    }
  }
  return zero_dual(1);
}

Cochain MagnetoelectricModel::e_from_db(const Cochain& dtilde, const Cochain& b, const SolveOptions&,
                                        SolveStats* stats) const {
  dtilde.require(Complex::dual, 2);
  const auto beta = cells_to_edges(grid(), b_norm2(b));
  const auto s1 = discretization().star[1].coefficients();
  Cochain e(grid(), Complex::primal, 1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = dtilde[i] / (s1[i] * (1.0 + spec().fourpi * p_.alpha * beta[i]));
  }
  if (stats) {
    Cochain r = d_from_e(e, b);
    r -= dtilde;
    *stats = SolveStats{0, 0, r.max_abs()};
  }
  return e;
}

}  // namespace splitmax::detail
