#pragma once

#include "splitmax/constitutive.hpp"

namespace splitmax::detail {

class VacuumModel final : public ConstitutiveModel {
 public:
  VacuumModel(ModelSpec spec, std::shared_ptr<const Discretization> disc)
      : ConstitutiveModel(std::move(spec), std::move(disc)) {}

  double k_eval(const Cochain& e, const Cochain& b) const override;
  Cochain dk_de(const Cochain& e, const Cochain& b) const override;
  Cochain dk_db(const Cochain& e, const Cochain& b) const override;
  Cochain hessian_action(const Cochain& e, const Cochain& b, HessianBlock which,
                         const Cochain& v) const override;
  Cochain e_from_db(const Cochain& dtilde, const Cochain& b, const SolveOptions& opts,
                    SolveStats* stats) const override;
};

class KerrModel final : public ConstitutiveModel {
 public:
  KerrModel(ModelSpec spec, std::shared_ptr<const Discretization> disc);

  double k_eval(const Cochain& e, const Cochain& b) const override;
  Cochain dk_de(const Cochain& e, const Cochain& b) const override;
  Cochain dk_db(const Cochain& e, const Cochain& b) const override;
  Cochain hessian_action(const Cochain& e, const Cochain& b, HessianBlock which,
                         const Cochain& v) const override;
  Cochain e_from_db(const Cochain& dtilde, const Cochain& b, const SolveOptions& opts,
                    SolveStats* stats) const override;
  double speed_factor() const override;

  /// Pointwise inversion at cell centers, averaged back onto edges.
  Cochain pointwise_guess(const Cochain& dtilde) const;

 private:
  Kerr p_;
};

class DispersiveModel final : public ConstitutiveModel {
 public:
  DispersiveModel(ModelSpec spec, std::shared_ptr<const Discretization> disc);

  double k_eval(const Cochain& e, const Cochain& b) const override;
  Cochain dk_de(const Cochain& e, const Cochain& b) const override;
  Cochain dk_db(const Cochain& e, const Cochain& b) const override;
  Cochain hessian_action(const Cochain& e, const Cochain& b, HessianBlock which,
                         const Cochain& v) const override;
  double speed_factor() const override;

 private:
  /// alpha star1 e + beta (star1 d0 d* e + d1^T star2 d1 e), the negated gradient.
  Cochain apply_operator(const Cochain& e) const;

  NonlocalDispersive p_;
  double lambda_max_;
};

class MagnetoelectricModel final : public ConstitutiveModel {
 public:
  MagnetoelectricModel(ModelSpec spec, std::shared_ptr<const Discretization> disc);

  double k_eval(const Cochain& e, const Cochain& b) const override;
  Cochain dk_de(const Cochain& e, const Cochain& b) const override;
  Cochain dk_db(const Cochain& e, const Cochain& b) const override;
  Cochain hessian_action(const Cochain& e, const Cochain& b, HessianBlock which,
                         const Cochain& v) const override;
  Cochain e_from_db(const Cochain& dtilde, const Cochain& b, const SolveOptions& opts,
                    SolveStats* stats) const override;

 private:
  /// |B|^2 per cell from the face reconstruction.
  std::vector<double> b_norm2(const Cochain& b) const;
  /// Per cell: 1/4 sum over its edges of star1 e^2, optionally polarized with v.
  std::vector<double> edge_energy(const Cochain& e, const Cochain& v) const;

  Magnetoelectric p_;
};

}  // namespace splitmax::detail
