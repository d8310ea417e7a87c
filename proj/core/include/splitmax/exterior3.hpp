#pragma once

// Pointwise exterior algebra on R^3 with a constant SPD metric.
//
// Forms are stored by their coefficients in the coordinate basis:
//   degree 0: 1
//   degree 1: dx1, dx2, dx3
//   degree 2: dx2^dx3, dx3^dx1, dx1^dx2   (slot i is the face normal to axis i)
//   degree 3: dx1^dx2^dx3
// With this ordering a vector proxy maps index-to-index onto a 2-form.

#include <array>
#include <cstdint>
#include <random>

namespace splitmax::ext3 {

using Mat3 = std::array<std::array<double, 3>, 3>;

struct Vec3 {
  std::array<double, 3> v{};

  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

/// Constant symmetric positive-definite metric with cached inverse and determinant.
class Metric3 {
 public:
  /// Throws ValidationError if g is not symmetric or not positive definite.
  explicit Metric3(const Mat3& g);

  static Metric3 identity();
  static Metric3 diagonal(double g1, double g2, double g3);

  const Mat3& g() const noexcept { return g_; }
  const Mat3& g_inv() const noexcept { return g_inv_; }
  double det() const noexcept { return det_; }
  double sqrt_det() const noexcept { return sqrt_det_; }
  bool is_diagonal() const noexcept;

 private:
  Mat3 g_{};
  Mat3 g_inv_{};
  double det_ = 1.0;
  double sqrt_det_ = 1.0;
};

class Form {
 public:
  Form() = default;
  Form(int degree, bool twisted = false);
  Form(int degree, std::array<double, 3> components, bool twisted = false);

  static Form scalar(double value, bool twisted = false);
  static Form volume(double value, bool twisted = false);

  int degree() const noexcept { return degree_; }
  bool twisted() const noexcept { return twisted_; }
  /// Number of independent coefficients: 1, 3, 3, 1.
  int size() const noexcept { return (degree_ == 1 || degree_ == 2) ? 3 : 1; }

  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::array<double, 3>& components() const noexcept { return c_; }

 private:
  int degree_ = 0;
  bool twisted_ = false;
  std::array<double, 3> c_{};
};

Form flat(const Metric3& g, const Vec3& v);
Vec3 sharp(const Metric3& g, const Form& a);
/// i_V vol: twisted 2-form with coefficients sqrt(det g) V^i.
Form interior_vol(const Metric3& g, const Vec3& v);
/// Inverse of interior_vol.
Vec3 interior_vol_inverse(const Metric3& g, const Form& a);

/// Hodge star of degree k to degree 3-k, twist flipped.
Form hodge(const Metric3& g, const Form& a);
/// Throws ValidationError("degree exceeds dimension") when j+k > 3.
Form wedge(const Form& a, const Form& b);
/// Pointwise inner product g_x(a, b) induced on k-forms.
double inner(const Metric3& g, const Form& a, const Form& b);

double dot(const Metric3& g, const Vec3& u, const Vec3& v);
/// vol(U,V,W) = sqrt(det g) det[U V W].
double volume(const Metric3& g, const Vec3& u, const Vec3& v, const Vec3& w);
/// The metric cross product: (U x V) . W = vol(U,V,W) for every W.
Vec3 cross(const Metric3& g, const Vec3& u, const Vec3& v);

/// Pullback under the orientation-reversing map x1 -> -x1. Twisted forms pick up
/// the extra sign(det) = -1 factor.
Form reflect_x1(const Form& a);
Vec3 reflect_x1(const Vec3& v);
Metric3 reflect_x1(const Metric3& g);

struct IdentityReport {
  double triple_wedge = 0.0;      // star(u^v^w) - vol(U,V,W)
  double dot_product = 0.0;       // u ^ i_V vol - (U.V) vol
  double cross_product = 0.0;     // u ^ v - i_{UxV} vol
  double flat_adjoint = 0.0;      // <i_W vol, V^flat> - (W, V)
  double flat_sharp = 0.0;        // sharp(flat(V)) - V
  double hodge_involution = 0.0;  // star star a - a, all degrees
  int trials = 0;

  double max_residual() const noexcept;
};

/// Checks the vector-calculus propositions on `trials` random vector triples.
/// Residuals are absolute and maximised over trials.
IdentityReport verify_identities(const Metric3& g, int trials, std::uint64_t seed = 1);

}  // namespace splitmax::ext3
