#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "splitmax/grid.hpp"

namespace splitmax::detail {

/// Calls f(s, t) for every site s, with t the site displaced by `off` (periodic).
/// Offsets must lie in [-n_i, n_i].
template <class F>
void for_each_shift(const GridSpec& g, const std::array<int, 3>& off, F&& f) {
  const int nx = g.n[0], ny = g.n[1], nz = g.n[2];
  std::vector<std::size_t> ix(static_cast<std::size_t>(nx));
  for (int i = 0; i < nx; ++i) ix[static_cast<std::size_t>(i)] = static_cast<std::size_t>(GridSpec::wrap(i + off[0], nx));
  std::size_t s = 0;
  for (int k = 0; k < nz; ++k) {
    const auto kk = static_cast<std::size_t>(GridSpec::wrap(k + off[2], nz));
    for (int j = 0; j < ny; ++j) {
      const std::size_t row =
          static_cast<std::size_t>(nx) * (static_cast<std::size_t>(GridSpec::wrap(j + off[1], ny)) +
                                          static_cast<std::size_t>(ny) * kk);
      for (int i = 0; i < nx; ++i, ++s) f(s, row + ix[static_cast<std::size_t>(i)]);
    }
  }
}

/// Per edge (3 axis blocks): mean of the four cells sharing the edge.
inline std::vector<double> cells_to_edges(const GridSpec& g, const std::vector<double>& cell) {
  const std::size_t n = g.cells();
  std::vector<double> out(3 * n, 0.0);
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    double* blk = out.data() + a * n;
    std::array<std::array<int, 3>, 4> offs{};
    offs[1][b] = -1;
    offs[2][b] = -1;
    offs[2][c] = -1;
    offs[3][c] = -1;
    for (const auto& o : offs) for_each_shift(g, o, [&](std::size_t s, std::size_t t) { blk[s] += cell[t]; });
    for (std::size_t s = 0; s < n; ++s) blk[s] *= 0.25;
  }
  return out;
}

/// Transpose of cells_to_edges: per cell, a quarter of the sum over its twelve edges.
inline std::vector<double> edges_to_cells(const GridSpec& g, const std::vector<double>& edge) {
  const std::size_t n = g.cells();
  std::vector<double> out(n, 0.0);
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    const double* blk = edge.data() + a * n;
    std::vector<double> sum(n, 0.0);
    std::array<std::array<int, 3>, 4> offs{};
    offs[1][b] = 1;
    offs[2][b] = 1;
    offs[2][c] = 1;
    offs[3][c] = 1;
    for (const auto& o : offs) for_each_shift(g, o, [&](std::size_t s, std::size_t t) { sum[s] += blk[t]; });
    for (std::size_t s = 0; s < n; ++s) out[s] += 0.25 * sum[s];
  }
  return out;
}

}  // namespace splitmax::detail
