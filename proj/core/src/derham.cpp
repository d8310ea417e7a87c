#include "splitmax/derham.hpp"

#include <cmath>

#include "splitmax/error.hpp"
#include "stencil.hpp"

namespace splitmax {
namespace {

// Offsets (in lattice steps) of the entities of one axis block that surround a
// cell, keyed by the primal degree of those entities.
struct Stencil {
  int count = 0;
  std::array<std::array<int, 3>, 4> offsets{};
};

Stencil cell_stencil(int primal_degree, int axis) {
  const int b = (axis + 1) % 3, c = (axis + 2) % 3;
  Stencil st;
  if (primal_degree == 1) {
    st.count = 4;
    st.offsets[1][b] = 1;
    st.offsets[2][c] = 1;
    st.offsets[3][b] = 1;
    st.offsets[3][c] = 1;
  } else {
    st.count = 2;
    st.offsets[1][axis] = 1;
  }
  return st;
}

void require_vector_degree(const Cochain& c) {
  if (c.degree() != 1 && c.degree() != 2) {
    throw MismatchError("reconstruction needs a degree 1 or 2 cochain");
  }
}

}  // namespace

double pairing(const Cochain& a, const Cochain& b) {
  if (a.grid() != b.grid()) throw MismatchError("pairing on different grids");
  if (a.complex() == b.complex() || a.degree() + b.degree() != 3) {
    throw MismatchError("pairing needs a primal k-cochain and a dual (3-k)-cochain");
  }
  return dot(a.values(), b.values());
}

double entity_measure(const GridSpec& grid, int degree, int axis) {
  switch (degree) {
    case 0:
      return 1.0;
    case 1:
      return grid.h[axis];
    case 2:
      return grid.h[(axis + 1) % 3] * grid.h[(axis + 2) % 3];
    default:
      return grid.cell_volume();
  }
}

Point entity_center(const GridSpec& grid, Complex complex, int degree, int axis, std::size_t site) {
  const auto ijk = grid.coords(site);
  Point x{ijk[0] * grid.h[0], ijk[1] * grid.h[1], ijk[2] * grid.h[2]};
  const int primal_degree = complex == Complex::primal ? degree : 3 - degree;
  switch (primal_degree) {
    case 1:
      x[axis] += 0.5 * grid.h[axis];
      break;
    case 2:
      for (int a = 0; a < 3; ++a) {
        if (a != axis) x[a] += 0.5 * grid.h[a];
      }
      break;
    case 3:
      for (int a = 0; a < 3; ++a) x[a] += 0.5 * grid.h[a];
      break;
    default:
      break;
  }
  return x;
}

Cochain de_rham_map(const GridSpec& grid, const ScalarField& field, Complex complex, int degree) {
  if (degree != 0 && degree != 3) throw MismatchError("scalar field needs a degree 0 or 3 target");
  Cochain out(grid, complex, degree);
  const double measure = entity_measure(grid, degree, 0);
  for (std::size_t s = 0; s < out.size(); ++s) {
    out[s] = field(entity_center(grid, complex, degree, 0, s)) * measure;
  }
  return out;
}

Cochain de_rham_map(const GridSpec& grid, const ComponentField& field, Complex complex, int degree) {
  if (degree != 1 && degree != 2) throw MismatchError("component field needs a degree 1 or 2 target");
  Cochain out(grid, complex, degree);
  const std::size_t n = grid.cells();
  for (int a = 0; a < 3; ++a) {
    const double measure = entity_measure(grid, degree, a);
    for (std::size_t s = 0; s < n; ++s) {
      out[a * n + s] = field(entity_center(grid, complex, degree, a, s))[a] * measure;
    }
  }
  return out;
}

std::vector<Components> reconstruct_at_centers(const Cochain& c) {
  require_vector_degree(c);
  const GridSpec& grid = c.grid();
  const std::size_t n = grid.cells();
  std::vector<Components> out(n, Components{0.0, 0.0, 0.0});
  for (int a = 0; a < 3; ++a) {
    const Stencil st = cell_stencil(c.primal_degree(), a);
    const double scale = 1.0 / (st.count * entity_measure(grid, c.degree(), a));
    const double* block = c.values().data() + a * n;
    for (int q = 0; q < st.count; ++q) {
      detail::for_each_shift(grid, st.offsets[q], [&](std::size_t s, std::size_t t) { out[s][a] += block[t]; });
    }
    for (auto& v : out) v[a] *= scale;
  }
  return out;
}

Cochain scatter_from_centers(const GridSpec& grid, Complex complex, int degree,
                             const std::vector<Components>& weights) {
  if (degree != 1 && degree != 2) throw MismatchError("scatter needs a degree 1 or 2 target");
  if (weights.size() != grid.cells()) throw MismatchError("scatter: one weight per cell required");
  Cochain out(grid, complex, degree);
  const std::size_t n = grid.cells();
  for (int a = 0; a < 3; ++a) {
    const Stencil st = cell_stencil(out.primal_degree(), a);
    const double scale = 1.0 / (st.count * entity_measure(grid, degree, a));
    double* block = out.values().data() + a * n;
    for (int q = 0; q < st.count; ++q) {
      detail::for_each_shift(grid, st.offsets[q],
                             [&](std::size_t s, std::size_t t) { block[t] += weights[s][a] * scale; });
    }
  }
  return out;
}

}  // namespace splitmax
