#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace splitmax {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on user-supplied data failed (grid, metric, model parameters, config).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Operands live on different grids, complexes or degrees.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// The constitutive map lost monotonicity (non-positive Jacobian encountered).
class NotInvertibleError : public Error {
 public:
  NotInvertibleError() : Error("constitutive map not invertible") {}
};

/// An iterative solve ran out of iterations.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double last_residual, int iterations)
      : Error(format(what, last_residual, iterations)),
        last_residual_(last_residual),
        iterations_(iterations) {}

  double last_residual() const noexcept { return last_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  static std::string format(const std::string& what, double residual, int iterations) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", residual);
    return what + " (last residual " + buf + " after " + std::to_string(iterations) + " iterations)";
  }

  double last_residual_;
  int iterations_;
};

}  // namespace splitmax
