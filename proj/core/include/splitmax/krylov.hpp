#pragma once

#include <functional>
#include <span>

namespace splitmax::krylov {

/// y = A x
using LinearOperator = std::function<void(std::span<const double> x, std::span<double> y)>;

struct Options {
  double rtol = 1e-12;  // relative to ||b||_2
  double atol = 0.0;    // absolute floor on ||r||_2
  int max_iter = 500;
  int restart = 40;     // GMRES only
};

struct Result {
  int iterations = 0;
  double residual = 0.0;  // final ||b - A x||_2 (recurrence value for CG)
  bool converged = false;
};

/// Conjugate gradients for symmetric positive-definite A, starting from the
/// incoming x. Throws NotInvertibleError if a direction of non-positive curvature
/// is encountered.
Result conjugate_gradient(const LinearOperator& a, std::span<const double> b, std::span<double> x,
                          const Options& opts);

/// Restarted GMRES with modified Gram-Schmidt, starting from the incoming x.
Result gmres(const LinearOperator& a, std::span<const double> b, std::span<double> x,
             const Options& opts);

}  // namespace splitmax::krylov
