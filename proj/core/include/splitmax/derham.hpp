#pragma once

#include <array>
#include <functional>
#include <vector>

#include "splitmax/cochain.hpp"
#include "splitmax/grid.hpp"

namespace splitmax {

using Point = std::array<double, 3>;
/// Coefficients of a 1- or 2-form in the (dx1, dx2, dx3) / (dx2^dx3, dx3^dx1, dx1^dx2) basis.
using Components = std::array<double, 3>;

using ScalarField = std::function<double(const Point&)>;
using ComponentField = std::function<Components(const Point&)>;

/// Poincare pairing: the coefficient dot product of a primal k-cochain with a dual
/// (3-k)-cochain (either argument order). Metric-free.
double pairing(const Cochain& a, const Cochain& b);

/// Geometric center of an entity. Dual entities share the center of the primal
/// entity they are dual to; `axis` is ignored for degree 0 and 3.
Point entity_center(const GridSpec& grid, Complex complex, int degree, int axis, std::size_t site);
/// Coordinate length / area / volume of an entity (1 for points).
double entity_measure(const GridSpec& grid, int degree, int axis);

/// Midpoint-rule de Rham map: value = integrand at the entity center times its measure.
Cochain de_rham_map(const GridSpec& grid, const ScalarField& field, Complex complex, int degree);
Cochain de_rham_map(const GridSpec& grid, const ComponentField& field, Complex complex, int degree);

/// Per-cell form coefficients at primal cell centers, obtained by averaging the
/// entity values surrounding each cell and dividing by the entity measure.
/// Accepts degree 1 and 2 on either complex; exact for constant fields.
std::vector<Components> reconstruct_at_centers(const Cochain& c);

/// Adjoint of reconstruct_at_centers: accumulates per-cell covectors back onto the
/// entities, so that dot(scatter(w), c) == sum_cells w . reconstruct(c).
Cochain scatter_from_centers(const GridSpec& grid, Complex complex, int degree,
                             const std::vector<Components>& weights);

}  // namespace splitmax
