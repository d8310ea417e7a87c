#include "splitmax/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "splitmax/error.hpp"

namespace splitmax::krylov {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

Result conjugate_gradient(const LinearOperator& a, std::span<const double> b, std::span<double> x,
                          const Options& opts) {
  const std::size_t n = b.size();
  std::vector<double> r(n), p(n), ap(n);
  a(x, ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  const double target = std::max(opts.rtol * norm(b), opts.atol);

  Result res;
  double rr = dot(r, r);
  res.residual = std::sqrt(rr);
  if (res.residual <= target) {
    res.converged = true;
    return res;
  }
  p = r;
  for (int it = 1; it <= opts.max_iter; ++it) {
    a(p, ap);
    double scale = 0.0;
    for (double v : p) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return res;
    double curvature = 0.0;
    for (std::size_t i = 0; i < n; ++i) curvature += (p[i] / scale) * (ap[i] / scale);
    if (!(curvature > 0.0)) throw NotInvertibleError();
    const double pap = dot(p, ap);
    if (pap == 0.0) return res;
    const double alpha = rr / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_new = dot(r, r);
    res.iterations = it;
    res.residual = std::sqrt(rr_new);
    if (res.residual <= target) {
      res.converged = true;
      return res;
    }
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
  }
  return res;
}

Result gmres(const LinearOperator& a, std::span<const double> b, std::span<double> x,
             const Options& opts) {
  const std::size_t n = b.size();
  const int m = std::max(1, opts.restart);
  const double target = std::max(opts.rtol * norm(b), opts.atol);

  std::vector<std::vector<double>> v(static_cast<std::size_t>(m + 1), std::vector<double>(n));
  std::vector<std::vector<double>> hess(static_cast<std::size_t>(m + 1), std::vector<double>(m, 0.0));
  std::vector<double> cs(m), sn(m), g(m + 1), w(n);

  Result res;
  while (res.iterations < opts.max_iter) {
    a(x, w);
    for (std::size_t i = 0; i < n; ++i) v[0][i] = b[i] - w[i];
    const double beta = norm(v[0]);
    res.residual = beta;
    if (beta <= target) {
      res.converged = true;
      return res;
    }
    for (auto& vi : v[0]) vi /= beta;
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    int j = 0;
    for (; j < m && res.iterations < opts.max_iter; ++j) {
      ++res.iterations;
      a(v[j], w);
      for (int i = 0; i <= j; ++i) {
        hess[i][j] = dot(w, v[i]);
        for (std::size_t q = 0; q < n; ++q) w[q] -= hess[i][j] * v[i][q];
      }
      hess[j + 1][j] = norm(w);
      if (hess[j + 1][j] > 0.0) {
        for (std::size_t q = 0; q < n; ++q) v[j + 1][q] = w[q] / hess[j + 1][j];
      }
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * hess[i][j] + sn[i] * hess[i + 1][j];
        hess[i + 1][j] = -sn[i] * hess[i][j] + cs[i] * hess[i + 1][j];
        hess[i][j] = t;
      }
      const double denom = std::hypot(hess[j][j], hess[j + 1][j]);
      cs[j] = denom > 0.0 ? hess[j][j] / denom : 1.0;
      sn[j] = denom > 0.0 ? hess[j + 1][j] / denom : 0.0;
      hess[j][j] = denom;
      hess[j + 1][j] = 0.0;
      g[j + 1] = -sn[j] * g[j];
      g[j] = cs[j] * g[j];
      res.residual = std::abs(g[j + 1]);
      if (res.residual <= target) {
        ++j;
        break;
      }
    }
    // Back substitution on the j x j upper-triangular system.
    std::vector<double> y(static_cast<std::size_t>(j));
    for (int i = j - 1; i >= 0; --i) {
      double s = g[i];
      for (int k = i + 1; k < j; ++k) s -= hess[i][k] * y[k];
      y[i] = s / hess[i][i];
    }
    for (int i = 0; i < j; ++i) {
      for (std::size_t q = 0; q < n; ++q) x[q] += y[i] * v[i][q];
    }
    if (res.residual <= target) {
      a(x, w);
      double rr = 0.0;
      for (std::size_t q = 0; q < n; ++q) rr += (b[q] - w[q]) * (b[q] - w[q]);
      res.residual = std::sqrt(rr);
      res.converged = res.residual <= target * 10.0;
      if (res.converged) return res;
    }
  }
  return res;
}

}  // namespace splitmax::krylov
