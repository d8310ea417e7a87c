#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "splitmax/cochain.hpp"
#include "splitmax/grid.hpp"

namespace splitmax {

/// Signed incidence matrix in CSR form realising a discrete exterior derivative.
/// Purely topological: entries are -1, 0 or +1 and no metric data is referenced.
class IncidenceOperator {
 public:
  struct Space {
    Complex complex = Complex::primal;
    int degree = 0;
    bool operator==(const Space&) const = default;
  };

  IncidenceOperator() = default;
  IncidenceOperator(const GridSpec& grid, Space source, Space target, std::vector<std::size_t> row_ptr,
                    std::vector<std::uint32_t> cols, std::vector<std::int8_t> vals);

  const GridSpec& grid() const noexcept { return grid_; }
  Space source() const noexcept { return source_; }
  Space target() const noexcept { return target_; }
  std::size_t rows() const noexcept { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  std::size_t cols() const noexcept { return ncols_; }
  std::size_t nonzeros() const noexcept { return vals_.size(); }

  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::uint32_t> col_index() const noexcept { return cols_; }
  std::span<const std::int8_t> values() const noexcept { return vals_; }

  /// Throws MismatchError if c is not in the source space.
  Cochain apply(const Cochain& c) const;
  /// out = A x (sizes checked)
  void apply(std::span<const double> x, std::span<double> out) const;
  /// out = A^T x
  void apply_transpose(std::span<const double> x, std::span<double> out) const;

  /// sign * A^T as an operator between the given spaces.
  IncidenceOperator signed_transpose(int sign, Space source, Space target) const;

 private:
  GridSpec grid_{};
  Space source_{};
  Space target_{};
  std::size_t ncols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> cols_;
  std::vector<std::int8_t> vals_;
};

/// Number of nonzero entries of the integer product second * first, computed in
/// exact integer arithmetic. Zero means the composition is the zero operator.
std::size_t composition_nonzeros(const IncidenceOperator& first, const IncidenceOperator& second);

/// Both exterior-derivative chains on a periodic grid.
///   d[k]:      primal k -> primal k+1
///   dual_d[j]: dual j   -> dual j+1,  dual_d[2-k] = (-1)^(k+1) d[k]^T
/// The sign makes <d_k a, b~> = (-1)^(3-k) <a, dual_d b~> hold exactly.
struct DeRhamComplex {
  GridSpec grid;
  std::array<IncidenceOperator, 3> d;
  std::array<IncidenceOperator, 3> dual_d;

  /// Applies d or dual_d according to the cochain's complex and degree.
  Cochain exterior_derivative(const Cochain& c) const;
};

DeRhamComplex build_complex(const GridSpec& grid);

}  // namespace splitmax
