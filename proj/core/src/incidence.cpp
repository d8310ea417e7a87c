#include "splitmax/incidence.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "splitmax/error.hpp"

namespace splitmax {
namespace {

using Space = IncidenceOperator::Space;

// Row-by-row builder for the lattice stencils.
class CsrBuilder {
 public:
  explicit CsrBuilder(std::size_t rows) { row_ptr_.reserve(rows + 1); row_ptr_.push_back(0); }

  void add(std::size_t col, int val) { pending_.emplace_back(static_cast<std::uint32_t>(col), val); }

  void end_row() {
    std::sort(pending_.begin(), pending_.end());
    for (const auto& [c, v] : pending_) {
      cols_.push_back(c);
      vals_.push_back(static_cast<std::int8_t>(v));
    }
    pending_.clear();
    row_ptr_.push_back(cols_.size());
  }

  IncidenceOperator finish(const GridSpec& grid, Space source, Space target) {
    return IncidenceOperator(grid, source, target, std::move(row_ptr_), std::move(cols_),
                             std::move(vals_));
  }

 private:
  std::vector<std::pair<std::uint32_t, int>> pending_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> cols_;
  std::vector<std::int8_t> vals_;
};

std::array<int, 3> shifted(std::array<int, 3> ijk, int axis) {
  ++ijk[axis];
  return ijk;
}

}  // namespace

IncidenceOperator::IncidenceOperator(const GridSpec& grid, Space source, Space target,
                                     std::vector<std::size_t> row_ptr, std::vector<std::uint32_t> cols,
                                     std::vector<std::int8_t> vals)
    : grid_(grid),
      source_(source),
      target_(target),
      ncols_(entity_count(grid, source.complex, source.degree)),
      row_ptr_(std::move(row_ptr)),
      cols_(std::move(cols)),
      vals_(std::move(vals)) {}

Cochain IncidenceOperator::apply(const Cochain& c) const {
  if (c.grid() != grid_) throw MismatchError("incidence operator applied on a different grid");
  c.require(source_.complex, source_.degree);
  Cochain out(grid_, target_.complex, target_.degree);
  apply(c.values(), out.values());
  return out;
}

void IncidenceOperator::apply(std::span<const double> x, std::span<double> out) const {
  if (x.size() != ncols_ || out.size() != rows()) throw MismatchError("incidence apply: size mismatch");
  const std::size_t nrows = rows();
  for (std::size_t r = 0; r < nrows; ++r) {
    double s = 0.0;
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) s += vals_[p] * x[cols_[p]];
    out[r] = s;
  }
}

void IncidenceOperator::apply_transpose(std::span<const double> x, std::span<double> out) const {
  if (x.size() != rows() || out.size() != ncols_) {
    throw MismatchError("incidence transpose apply: size mismatch");
  }
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t nrows = rows();
  for (std::size_t r = 0; r < nrows; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) out[cols_[p]] += vals_[p] * x[r];
  }
}

IncidenceOperator IncidenceOperator::signed_transpose(int sign, Space source, Space target) const {
  std::vector<std::size_t> counts(ncols_ + 1, 0);
  for (auto c : cols_) ++counts[c + 1];
  for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
  std::vector<std::size_t> row_ptr = counts;
  std::vector<std::uint32_t> cols(cols_.size());
  std::vector<std::int8_t> vals(vals_.size());
  const std::size_t nrows = rows();
  for (std::size_t r = 0; r < nrows; ++r) {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      const std::size_t dst = counts[cols_[p]]++;
      cols[dst] = static_cast<std::uint32_t>(r);
      vals[dst] = static_cast<std::int8_t>(sign * vals_[p]);
    }
  }
  return IncidenceOperator(grid_, source, target, std::move(row_ptr), std::move(cols), std::move(vals));
}

std::size_t composition_nonzeros(const IncidenceOperator& first, const IncidenceOperator& second) {
  if (!(first.target() == second.source()) || first.rows() != second.cols()) {
    throw MismatchError("composition of incompatible incidence operators");
  }
  const auto rp1 = first.row_ptr();
  const auto c1 = first.col_index();
  const auto v1 = first.values();
  const auto rp2 = second.row_ptr();
  const auto c2 = second.col_index();
  const auto v2 = second.values();
  std::size_t nonzeros = 0;
  std::map<std::uint32_t, long> acc;
  for (std::size_t r = 0; r < second.rows(); ++r) {
    acc.clear();
    for (std::size_t p = rp2[r]; p < rp2[r + 1]; ++p) {
      const auto mid = c2[p];
      for (std::size_t q = rp1[mid]; q < rp1[mid + 1]; ++q) {
        acc[c1[q]] += static_cast<long>(v2[p]) * static_cast<long>(v1[q]);
      }
    }
    for (const auto& [col, v] : acc) nonzeros += (v != 0);
  }
  return nonzeros;
}

Cochain DeRhamComplex::exterior_derivative(const Cochain& c) const {
  if (c.degree() >= 3) throw MismatchError("exterior derivative of a top-degree cochain");
  return c.complex() == Complex::primal ? d[c.degree()].apply(c) : dual_d[c.degree()].apply(c);
}

DeRhamComplex build_complex(const GridSpec& grid) {
  grid.validate();
  const std::size_t n = grid.cells();
  DeRhamComplex cx;
  cx.grid = grid;

  // d0: edge(a, s) = node(s + e_a) - node(s)
  {
    CsrBuilder b(3 * n);
    for (int a = 0; a < 3; ++a) {
      for (std::size_t s = 0; s < n; ++s) {
        const auto ijk = grid.coords(s);
        b.add(grid.site(shifted(ijk, a)), +1);
        b.add(s, -1);
        b.end_row();
      }
    }
    cx.d[0] = b.finish(grid, {Complex::primal, 0}, {Complex::primal, 1});
  }
  // d1: face(a, s) oriented dx_b ^ dx_c with (a, b, c) cyclic:
  //   + e_c(s + e_b) - e_c(s) - e_b(s + e_c) + e_b(s)
  {
    CsrBuilder b(3 * n);
    for (int a = 0; a < 3; ++a) {
      const int ab = (a + 1) % 3, ac = (a + 2) % 3;
      for (std::size_t s = 0; s < n; ++s) {
        const auto ijk = grid.coords(s);
        b.add(ac * n + grid.site(shifted(ijk, ab)), +1);
        b.add(ac * n + s, -1);
        b.add(ab * n + grid.site(shifted(ijk, ac)), -1);
        b.add(ab * n + s, +1);
        b.end_row();
      }
    }
    cx.d[1] = b.finish(grid, {Complex::primal, 1}, {Complex::primal, 2});
  }
  // d2: cell(s) = sum_a face_a(s + e_a) - face_a(s)
  {
    CsrBuilder b(n);
    for (std::size_t s = 0; s < n; ++s) {
      const auto ijk = grid.coords(s);
      for (int a = 0; a < 3; ++a) {
        b.add(a * n + grid.site(shifted(ijk, a)), +1);
        b.add(a * n + s, -1);
      }
      b.end_row();
    }
    cx.d[2] = b.finish(grid, {Complex::primal, 2}, {Complex::primal, 3});
  }

  for (int k = 0; k < 3; ++k) {
    const int j = 2 - k;
    const int sign = (k % 2 == 0) ? -1 : +1;  // (-1)^(k+1)
    cx.dual_d[j] = cx.d[k].signed_transpose(sign, {Complex::dual, j}, {Complex::dual, j + 1});
  }
  return cx;
}

}  // namespace splitmax
