#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

namespace splitmax {

/// Periodic Cartesian grid. Primal entities sit at nodes, edges, faces and cells of
/// the lattice with spacing h; the dual lattice is offset by h/2 per axis so each
/// dual (3-k)-entity coincides with exactly one primal k-entity.
struct GridSpec {
  std::array<int, 3> n{2, 2, 2};
  std::array<double, 3> h{1.0, 1.0, 1.0};

  /// Throws ValidationError naming the offending field.
  void validate() const;

  std::size_t cells() const noexcept {
    return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]) *
           static_cast<std::size_t>(n[2]);
  }
  double length(int axis) const noexcept { return n[axis] * h[axis]; }
  double cell_volume() const noexcept { return h[0] * h[1] * h[2]; }

  /// Linear index of lattice site (i, j, k), wrapped periodically.
  std::size_t site(int i, int j, int k) const noexcept {
    i = wrap(i, n[0]);
    j = wrap(j, n[1]);
    k = wrap(k, n[2]);
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(n[0]) *
               (static_cast<std::size_t>(j) + static_cast<std::size_t>(n[1]) * static_cast<std::size_t>(k));
  }
  std::size_t site(const std::array<int, 3>& ijk) const noexcept {
    return site(ijk[0], ijk[1], ijk[2]);
  }
  /// Inverse of site() for an in-range index.
  std::array<int, 3> coords(std::size_t s) const noexcept {
    const auto nx = static_cast<std::size_t>(n[0]);
    const auto ny = static_cast<std::size_t>(n[1]);
    return {static_cast<int>(s % nx), static_cast<int>((s / nx) % ny),
            static_cast<int>(s / (nx * ny))};
  }

  static int wrap(int i, int m) noexcept {
    i %= m;
    return i < 0 ? i + m : i;
  }

  bool operator==(const GridSpec&) const = default;
};

enum class Complex : std::uint8_t { primal = 0, dual = 1 };

inline const char* to_string(Complex c) { return c == Complex::primal ? "primal" : "dual"; }

/// Number of k-entities of the given complex. Primal k and dual 3-k share a count.
inline std::size_t entity_count(const GridSpec& g, Complex c, int degree) {
  const int primal_degree = c == Complex::primal ? degree : 3 - degree;
  return (primal_degree == 1 || primal_degree == 2) ? 3 * g.cells() : g.cells();
}

}  // namespace splitmax
