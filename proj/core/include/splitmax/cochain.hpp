#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "splitmax/grid.hpp"

namespace splitmax {

/// Degree-k data on the primal (straight) or dual (twisted) complex. Values are
/// integrals over entities. Degrees 1 and 2 are stored as three consecutive
/// per-axis blocks of grid.cells() entries each; a dual entity shares the index of
/// the primal entity it is dual to.
class Cochain {
 public:
  Cochain() = default;
  Cochain(const GridSpec& grid, Complex complex, int degree);
  Cochain(const GridSpec& grid, Complex complex, int degree, std::vector<double> values);

  const GridSpec& grid() const noexcept { return grid_; }
  Complex complex() const noexcept { return complex_; }
  int degree() const noexcept { return degree_; }
  /// Degree of the primal entity this cochain's entities are (dual to).
  int primal_degree() const noexcept { return complex_ == Complex::primal ? degree_ : 3 - degree_; }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  std::vector<double>& data() noexcept { return values_; }
  const std::vector<double>& data() const noexcept { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Entry for the entity of the given axis block at lattice site (i, j, k).
  double& at(int axis, int i, int j, int k) { return values_[offset(axis) + grid_.site(i, j, k)]; }
  double at(int axis, int i, int j, int k) const {
    return values_[offset(axis) + grid_.site(i, j, k)];
  }

  bool same_space(const Cochain& other) const noexcept {
    return grid_ == other.grid_ && complex_ == other.complex_ && degree_ == other.degree_;
  }
  /// Throws MismatchError unless other lives in the same space.
  void require_same_space(const Cochain& other) const;
  void require(Complex complex, int degree) const;

  Cochain& operator+=(const Cochain& other);
  Cochain& operator-=(const Cochain& other);
  Cochain& operator*=(double s);
  /// this += a * x
  Cochain& axpy(double a, const Cochain& x);

  double max_abs() const noexcept;

 private:
  std::size_t offset(int axis) const noexcept {
    return static_cast<std::size_t>(axis) * grid_.cells();
  }

  GridSpec grid_{};
  Complex complex_ = Complex::primal;
  int degree_ = 0;
  std::vector<double> values_;
};

Cochain operator+(Cochain a, const Cochain& b);
Cochain operator-(Cochain a, const Cochain& b);
Cochain operator*(double s, Cochain a);

/// Plain coefficient dot product of two vectors of equal length.
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace splitmax
