#include "splitmax/cochain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "splitmax/error.hpp"

namespace splitmax {

Cochain::Cochain(const GridSpec& grid, Complex complex, int degree)
    : grid_(grid), complex_(complex), degree_(degree) {
  if (degree < 0 || degree > 3) throw ValidationError("cochain degree must be in 0..3");
  values_.assign(entity_count(grid, complex, degree), 0.0);
}

Cochain::Cochain(const GridSpec& grid, Complex complex, int degree, std::vector<double> values)
    : grid_(grid), complex_(complex), degree_(degree), values_(std::move(values)) {
  if (degree < 0 || degree > 3) throw ValidationError("cochain degree must be in 0..3");
  if (values_.size() != entity_count(grid, complex, degree)) {
    throw MismatchError("cochain value count does not match the entity count");
  }
}

void Cochain::require_same_space(const Cochain& other) const {
  if (!same_space(other)) {
    throw MismatchError(std::string("cochain space mismatch: ") + to_string(complex_) + " " +
                        std::to_string(degree_) + " vs " + to_string(other.complex_) + " " +
                        std::to_string(other.degree_));
  }
}

void Cochain::require(Complex complex, int degree) const {
  if (complex_ != complex || degree_ != degree) {
    throw MismatchError(std::string("expected a ") + to_string(complex) + " " +
                        std::to_string(degree) + "-cochain, got " + to_string(complex_) + " " +
                        std::to_string(degree_));
  }
}

Cochain& Cochain::operator+=(const Cochain& other) {
  require_same_space(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Cochain& Cochain::operator-=(const Cochain& other) {
  require_same_space(other);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Cochain& Cochain::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Cochain& Cochain::axpy(double a, const Cochain& x) {
  require_same_space(x);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += a * x.values_[i];
  return *this;
}

double Cochain::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
Cochain operator*(double s, Cochain a) { return a *= s; }

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw MismatchError("dot product of vectors of different length");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace splitmax
