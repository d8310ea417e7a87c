#include <algorithm>
#include <cmath>

#include "models.hpp"
#include "splitmax/error.hpp"

namespace splitmax::detail {

DispersiveModel::DispersiveModel(ModelSpec spec, std::shared_ptr<const Discretization> disc)
    : ConstitutiveModel(std::move(spec), std::move(disc)),
      p_(std::get<NonlocalDispersive>(this->spec().variant)),
      lambda_max_(laplacian_max_eigenvalue(grid(), discretization().metric)) {
  if (!std::isfinite(p_.alpha) || !std::isfinite(p_.beta)) {
    throw ValidationError("model.alpha, model.beta: finite values required");
  }
  const double fp = this->spec().fourpi;
  const double lowest = 1.0 + fp * p_.alpha + fp * p_.beta * (p_.beta < 0.0 ? lambda_max_ : 0.0);
  if (!(1.0 + fp * p_.alpha > 0.0) || !(lowest > 0.0)) {
    throw ValidationError(
        "model.alpha, model.beta: (1 + fourpi*alpha) + fourpi*beta*Lap_h must be positive definite on "
        "the grid");
  }
}

Cochain DispersiveModel::apply_operator(const Cochain& e) const {
  e.require(Complex::primal, 1);
  const auto& disc = discretization();
  const auto s1 = disc.star[1].coefficients();

  Cochain grad_div = disc.complex.d[0].apply(disc.codifferential(e));
  const Cochain curl = disc.star[2].apply(disc.complex.d[1].apply(e));
  Cochain out(grid(), Complex::dual, 2);
  disc.complex.d[1].apply_transpose(curl.values(), out.values());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = p_.alpha * s1[i] * e[i] + p_.beta * (s1[i] * grad_div[i] + out[i]);
  }
  return out;
}

double DispersiveModel::k_eval(const Cochain& e, const Cochain&) const {
  return -0.5 * dot(e.values(), apply_operator(e).values());
}

Cochain DispersiveModel::dk_de(const Cochain& e, const Cochain&) const {
  Cochain g = apply_operator(e);
  g *= -1.0;
  return g;
}

Cochain DispersiveModel::dk_db(const Cochain&, const Cochain& b) const {
  b.require(Complex::primal, 2);
  return zero_dual(1);
}

Cochain DispersiveModel::hessian_action(const Cochain&, const Cochain&, HessianBlock which,
                                        const Cochain& v) const {
  if (which == HessianBlock::be) return zero_dual(2);
  if (which != HessianBlock::ee) return zero_dual(1);
  Cochain g = apply_operator(v);
  g *= -1.0;
  return g;
}

double DispersiveModel::speed_factor() const {
  const double fp = spec().fourpi;
  const double a = 1.0 + fp * p_.alpha;
  const double lowest = std::min(a, a + fp * p_.beta * lambda_max_);
  return std::max(1.0, 1.0 / std::sqrt(lowest));
}

}  // namespace splitmax::detail
