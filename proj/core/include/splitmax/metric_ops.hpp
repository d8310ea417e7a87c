#pragma once

#include <array>
#include <span>
#include <vector>

#include "splitmax/cochain.hpp"
#include "splitmax/exterior3.hpp"
#include "splitmax/grid.hpp"
#include "splitmax/incidence.hpp"

namespace splitmax {

/// Constant diagonal metric diag(g1, g2, g3); the only metric the grid-level Hodge
/// operators support.
class MaterialMetric {
 public:
  MaterialMetric() : MaterialMetric(1.0, 1.0, 1.0) {}
  MaterialMetric(double g1, double g2, double g3);
  /// Throws ValidationError("unsupported metric for discrete Hodge") if g is not diagonal.
  static MaterialMetric from(const ext3::Metric3& g);

  const ext3::Metric3& metric() const noexcept { return metric_; }
  double operator[](int axis) const noexcept { return metric_.g()[axis][axis]; }
  double inverse(int axis) const noexcept { return metric_.g_inv()[axis][axis]; }
  double sqrt_det() const noexcept { return metric_.sqrt_det(); }

 private:
  ext3::Metric3 metric_;
};

/// Diagonal Hodge star from primal k-cochains to dual (3-k)-cochains.
class HodgeOperator {
 public:
  HodgeOperator() = default;
  HodgeOperator(const GridSpec& grid, int degree, std::vector<double> coefficients);

  int degree() const noexcept { return degree_; }
  const GridSpec& grid() const noexcept { return grid_; }
  std::span<const double> coefficients() const noexcept { return coeff_; }
  double coefficient(std::size_t i) const noexcept { return coeff_[i]; }

  /// primal k -> dual 3-k
  Cochain apply(const Cochain& c) const;
  /// dual 3-k -> primal k
  Cochain apply_inverse(const Cochain& c) const;

 private:
  GridSpec grid_{};
  int degree_ = 0;
  std::vector<double> coeff_;
};

/// Coefficient on an axis-`axis` entity: the continuous Hodge coefficient of the
/// basis form times (dual entity measure / primal entity measure).
HodgeOperator build_hodge(const GridSpec& grid, const MaterialMetric& g, int degree);
HodgeOperator build_hodge(const GridSpec& grid, const ext3::Metric3& g, int degree);

/// (a, b) = <a, star b> for primal k-cochains.
double l2_inner(const Cochain& a, const Cochain& b, const HodgeOperator& star);

/// Everything a constitutive model or integrator needs about the discrete geometry:
/// the metric-free complex plus the metric-carrying Hodge stars for k = 0..3.
struct Discretization {
  GridSpec grid;
  DeRhamComplex complex;
  MaterialMetric metric;
  std::array<HodgeOperator, 4> star;

  static Discretization build(const GridSpec& grid, const MaterialMetric& metric);

  /// star_{k-1}^{-1} d_{k-1}^T star_k on primal k-cochains, k >= 1: the l2-adjoint of d,
  /// so l2(d a, b) = l2(a, codifferential(b)). Equals (-1)^k star^{-1} dual_d star.
  Cochain codifferential(const Cochain& c) const;
};

}  // namespace splitmax
