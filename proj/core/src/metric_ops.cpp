#include "splitmax/metric_ops.hpp"

#include <cmath>
#include <string>

#include "splitmax/derham.hpp"
#include "splitmax/error.hpp"

namespace splitmax {
namespace {

ext3::Metric3 diagonal_metric(double g1, double g2, double g3) {
  for (double gi : {g1, g2, g3}) {
    if (!(gi > 0.0) || !std::isfinite(gi)) throw ValidationError("metric: g_i > 0 required");
  }
  return ext3::Metric3::diagonal(g1, g2, g3);
}

}  // namespace

MaterialMetric::MaterialMetric(double g1, double g2, double g3) : metric_(diagonal_metric(g1, g2, g3)) {}

MaterialMetric MaterialMetric::from(const ext3::Metric3& g) {
  if (!g.is_diagonal()) throw ValidationError("unsupported metric for discrete Hodge");
  return MaterialMetric(g.g()[0][0], g.g()[1][1], g.g()[2][2]);
}

HodgeOperator::HodgeOperator(const GridSpec& grid, int degree, std::vector<double> coefficients)
    : grid_(grid), degree_(degree), coeff_(std::move(coefficients)) {
  if (coeff_.size() != entity_count(grid, Complex::primal, degree)) {
    throw MismatchError("Hodge coefficient count does not match the entity count");
  }
}

Cochain HodgeOperator::apply(const Cochain& c) const {
  if (c.grid() != grid_) throw MismatchError("Hodge star applied on a different grid");
  c.require(Complex::primal, degree_);
  Cochain out(grid_, Complex::dual, 3 - degree_);
  for (std::size_t i = 0; i < coeff_.size(); ++i) out[i] = coeff_[i] * c[i];
  return out;
}

Cochain HodgeOperator::apply_inverse(const Cochain& c) const {
  if (c.grid() != grid_) throw MismatchError("Hodge star applied on a different grid");
  c.require(Complex::dual, 3 - degree_);
  Cochain out(grid_, Complex::primal, degree_);
  for (std::size_t i = 0; i < coeff_.size(); ++i) out[i] = c[i] / coeff_[i];
  return out;
}

HodgeOperator build_hodge(const GridSpec& grid, const MaterialMetric& g, int degree) {
  if (degree < 0 || degree > 3) throw ValidationError("Hodge degree must be in 0..3");
  grid.validate();
  const std::size_t n = grid.cells();
  const int axes = (degree == 1 || degree == 2) ? 3 : 1;
  std::vector<double> coeff(static_cast<std::size_t>(axes) * n);
  for (int a = 0; a < axes; ++a) {
    ext3::Form basis(degree);
    basis[a] = 1.0;
    const ext3::Form star = ext3::hodge(g.metric(), basis);
    const double c = star[a] * entity_measure(grid, 3 - degree, a) / entity_measure(grid, degree, a);
    std::fill(coeff.begin() + static_cast<std::ptrdiff_t>(a * n),
              coeff.begin() + static_cast<std::ptrdiff_t>((a + 1) * n), c);
  }
  return HodgeOperator(grid, degree, std::move(coeff));
}

HodgeOperator build_hodge(const GridSpec& grid, const ext3::Metric3& g, int degree) {
  return build_hodge(grid, MaterialMetric::from(g), degree);
}

double l2_inner(const Cochain& a, const Cochain& b, const HodgeOperator& star) {
  a.require_same_space(b);
  return pairing(a, star.apply(b));
}

Discretization Discretization::build(const GridSpec& grid, const MaterialMetric& metric) {
  Discretization d{grid, build_complex(grid), metric, {}};
  for (int k = 0; k <= 3; ++k) d.star[k] = build_hodge(grid, metric, k);
  return d;
}

Cochain Discretization::codifferential(const Cochain& c) const {
  if (c.complex() != Complex::primal || c.degree() < 1) {
    throw MismatchError("codifferential needs a primal k-cochain with k >= 1");
  }
  const int k = c.degree();
  const Cochain s = star[k].apply(c);
  Cochain out(grid, Complex::primal, k - 1);
  complex.d[k - 1].apply_transpose(s.values(), out.values());
  const auto inv = star[k - 1].coefficients();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= inv[i];
  return out;
}

}  // namespace splitmax
