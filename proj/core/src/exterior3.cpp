#include "splitmax/exterior3.hpp"

#include <algorithm>
#include <cmath>

#include "splitmax/error.hpp"

namespace splitmax::ext3 {
namespace {

constexpr int next(int i) { return (i + 1) % 3; }
constexpr int prev(int i) { return (i + 2) % 3; }

double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::array<double, 3> mul(const Mat3& m, const std::array<double, 3>& x) {
  std::array<double, 3> y{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) y[i] += m[i][j] * x[j];
  }
  return y;
}

void require_degree(const Form& a, int degree) {
  if (a.degree() != degree) {
    throw MismatchError("expected a " + std::to_string(degree) + "-form, got degree " +
                        std::to_string(a.degree()));
  }
}

}  // namespace

Metric3::Metric3(const Mat3& g) : g_(g) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (g[i][j] != g[j][i] || !std::isfinite(g[i][j])) {
        throw ValidationError("metric must be symmetric with finite entries");
      }
    }
  }
  const double m1 = g[0][0];
  const double m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  det_ = det3(g);
  if (!(m1 > 0.0 && m2 > 0.0 && det_ > 0.0)) {
    throw ValidationError("metric must be positive definite");
  }
  sqrt_det_ = std::sqrt(det_);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // adjugate: cofactor of (j, i)
      const int r0 = next(j), r1 = prev(j), c0 = next(i), c1 = prev(i);
      g_inv_[i][j] = (g[r0][c0] * g[r1][c1] - g[r0][c1] * g[r1][c0]) / det_;
    }
  }
}

Metric3 Metric3::identity() { return diagonal(1.0, 1.0, 1.0); }

Metric3 Metric3::diagonal(double g1, double g2, double g3) {
  return Metric3(Mat3{{{g1, 0.0, 0.0}, {0.0, g2, 0.0}, {0.0, 0.0, g3}}});
}

bool Metric3::is_diagonal() const noexcept {
  return g_[0][1] == 0.0 && g_[0][2] == 0.0 && g_[1][2] == 0.0;
}

Form::Form(int degree, bool twisted) : degree_(degree), twisted_(twisted) {
  if (degree < 0 || degree > 3) throw ValidationError("degree exceeds dimension");
}

Form::Form(int degree, std::array<double, 3> components, bool twisted)
    : Form(degree, twisted) {
  c_ = components;
  if (size() == 1) c_[1] = c_[2] = 0.0;
}

Form Form::scalar(double value, bool twisted) { return Form(0, {value, 0.0, 0.0}, twisted); }
Form Form::volume(double value, bool twisted) { return Form(3, {value, 0.0, 0.0}, twisted); }

Form flat(const Metric3& g, const Vec3& v) { return Form(1, mul(g.g(), v.v), false); }

Vec3 sharp(const Metric3& g, const Form& a) {
  require_degree(a, 1);
  return Vec3{mul(g.g_inv(), a.components())};
}

Form interior_vol(const Metric3& g, const Vec3& v) {
  Form out(2, true);
  for (int i = 0; i < 3; ++i) out[i] = g.sqrt_det() * v[i];
  return out;
}

Vec3 interior_vol_inverse(const Metric3& g, const Form& a) {
  require_degree(a, 2);
  Vec3 v;
  for (int i = 0; i < 3; ++i) v[i] = a[i] / g.sqrt_det();
  return v;
}

Form hodge(const Metric3& g, const Form& a) {
  const bool tw = !a.twisted();
  switch (a.degree()) {
    case 0:
      return Form::volume(a[0] * g.sqrt_det(), tw);
    case 1: {
      auto c = mul(g.g_inv(), a.components());
      for (auto& x : c) x *= g.sqrt_det();
      return Form(2, c, tw);
    }
    case 2: {
      auto c = mul(g.g(), a.components());
      for (auto& x : c) x /= g.sqrt_det();
      return Form(1, c, tw);
    }
    default:
      return Form::scalar(a[0] / g.sqrt_det(), tw);
  }
}

Form wedge(const Form& a, const Form& b) {
  const int degree = a.degree() + b.degree();
  if (degree > 3) throw ValidationError("degree exceeds dimension");
  const bool tw = a.twisted() != b.twisted();
  if (a.degree() == 0 || b.degree() == 0) {
    const Form& s = a.degree() == 0 ? a : b;
    const Form& f = a.degree() == 0 ? b : a;
    Form out(degree, tw);
    for (int i = 0; i < f.size(); ++i) out[i] = s[0] * f[i];
    return out;
  }
  if (a.degree() == 1 && b.degree() == 1) {
    Form out(2, tw);
    for (int i = 0; i < 3; ++i) out[i] = a[next(i)] * b[prev(i)] - a[prev(i)] * b[next(i)];
    return out;
  }
  // 1 ^ 2 or 2 ^ 1: dx^i ^ (slot i) = dx1^dx2^dx3, and (-1)^{1*2} = +1.
  return Form::volume(a[0] * b[0] + a[1] * b[1] + a[2] * b[2], tw);
}

double inner(const Metric3& g, const Form& a, const Form& b) {
  if (a.degree() != b.degree()) throw MismatchError("inner product of forms of different degree");
  switch (a.degree()) {
    case 0:
      return a[0] * b[0];
    case 1: {
      const auto gb = mul(g.g_inv(), b.components());
      return a[0] * gb[0] + a[1] * gb[1] + a[2] * gb[2];
    }
    case 2: {
      // Induced metric on (23,31,12) is cof(g^-1) = g / det g.
      const auto gb = mul(g.g(), b.components());
      return (a[0] * gb[0] + a[1] * gb[1] + a[2] * gb[2]) / g.det();
    }
    default:
      return a[0] * b[0] / g.det();
  }
}

double dot(const Metric3& g, const Vec3& u, const Vec3& v) {
  const auto gv = mul(g.g(), v.v);
  return u[0] * gv[0] + u[1] * gv[1] + u[2] * gv[2];
}

double volume(const Metric3& g, const Vec3& u, const Vec3& v, const Vec3& w) {
  const Mat3 m{{{u[0], v[0], w[0]}, {u[1], v[1], w[1]}, {u[2], v[2], w[2]}}};
  return g.sqrt_det() * det3(m);
}

Vec3 cross(const Metric3& g, const Vec3& u, const Vec3& v) {
  // Lowered components sqrt(det g) eps_ijk U^j V^k, then raise.
  std::array<double, 3> lower{};
  for (int i = 0; i < 3; ++i) {
    lower[i] = g.sqrt_det() * (u[next(i)] * v[prev(i)] - u[prev(i)] * v[next(i)]);
  }
  return Vec3{mul(g.g_inv(), lower)};
}

Form reflect_x1(const Form& a) {
  static constexpr std::array<std::array<double, 3>, 4> kPullback{{
      {1.0, 0.0, 0.0},
      {-1.0, 1.0, 1.0},
      {1.0, -1.0, -1.0},
      {-1.0, 0.0, 0.0},
  }};
  const double orientation = a.twisted() ? -1.0 : 1.0;
  Form out(a.degree(), a.twisted());
  for (int i = 0; i < a.size(); ++i) out[i] = orientation * kPullback[a.degree()][i] * a[i];
  return out;
}

Vec3 reflect_x1(const Vec3& v) { return Vec3{{-v[0], v[1], v[2]}}; }

Metric3 reflect_x1(const Metric3& g) {
  Mat3 m = g.g();
  m[0][1] = -m[0][1];
  m[1][0] = -m[1][0];
  m[0][2] = -m[0][2];
  m[2][0] = -m[2][0];
  return Metric3(m);
}

double IdentityReport::max_residual() const noexcept {
  return std::max({triple_wedge, dot_product, cross_product, flat_adjoint, flat_sharp,
                   hodge_involution});
}

IdentityReport verify_identities(const Metric3& g, int trials, std::uint64_t seed) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto random_vec = [&] { return Vec3{{uni(rng), uni(rng), uni(rng)}}; };

  IdentityReport r;
  r.trials = trials;
  auto track = [](double& slot, double value) { slot = std::max(slot, std::abs(value)); };

  for (int t = 0; t < trials; ++t) {
    const Vec3 u = random_vec(), v = random_vec(), w = random_vec();
    const Form uf = flat(g, u), vf = flat(g, v), wf = flat(g, w);

    const Form triple = hodge(g, wedge(wedge(uf, vf), wf));
    track(r.triple_wedge, triple[0] - volume(g, u, v, w));

    const Form dotform = wedge(uf, interior_vol(g, v));
    track(r.dot_product, dotform[0] - dot(g, u, v) * g.sqrt_det());

    const Form uv = wedge(uf, vf);
    const Form ixv = interior_vol(g, cross(g, u, v));
    for (int i = 0; i < 3; ++i) track(r.cross_product, uv[i] - ixv[i]);

    const Form adj = wedge(interior_vol(g, w), vf);
    track(r.flat_adjoint, adj[0] - dot(g, w, v) * g.sqrt_det());

    const Vec3 back = sharp(g, uf);
    for (int i = 0; i < 3; ++i) track(r.flat_sharp, back[i] - u[i]);

    for (int k = 0; k <= 3; ++k) {
      const Form a(k, {uni(rng), uni(rng), uni(rng)}, (t % 2) == 1);
      const Form aa = hodge(g, hodge(g, a));
      for (int i = 0; i < a.size(); ++i) track(r.hodge_involution, aa[i] - a[i]);
    }
  }
  return r;
}

}  // namespace splitmax::ext3
