#pragma once

#include <memory>
#include <numbers>
#include <string>
#include <variant>

#include "splitmax/cochain.hpp"
#include "splitmax/metric_ops.hpp"

namespace splitmax {

struct Vacuum {};
/// K = -int (chi1/2 |E|^2 + chi3/4 |E|^4) vol
struct Kerr {
  double chi1 = 0.0;
  double chi3 = 0.0;
};
/// K = -1/2 int alpha |E|^2 + beta (|d* e|^2 + |d e|^2) vol
struct NonlocalDispersive {
  double alpha = 0.0;
  double beta = 0.0;
};
/// K = -alpha/2 int |E|^2 |B|^2 vol
struct Magnetoelectric {
  double alpha = 0.0;
};

using ModelVariant = std::variant<Vacuum, Kerr, NonlocalDispersive, Magnetoelectric>;

/// Matter model plus the Gaussian unit constants used throughout.
struct ModelSpec {
  ModelVariant variant{};
  double c = 1.0;
  double fourpi = 4.0 * std::numbers::pi;

  std::string name() const;
  /// True when K is quadratic in e and independent of b (Vacuum, NonlocalDispersive).
  bool linear() const noexcept;
};

/// Options for the implicit (d~, b) -> e solve.
struct SolveOptions {
  double tol = 1e-10;  // absolute, infinity norm of d_from_e(e, b) - d~
  int max_iter = 50;   // Newton iterations
  int max_krylov = 1000;
};

struct SolveStats {
  int newton_iterations = 0;
  int krylov_iterations = 0;
  double residual = 0.0;
};

/// Second derivatives of K. The first letter names the slot being differentiated
/// again, the second the direction: ee and be act on e-directions / b-directions and
/// return dual 2-cochains (variations of dk_de); eb and bb return dual 1-cochains
/// (variations of dk_db).
enum class HessianBlock { ee, be, eb, bb };

/// A discrete matter functional K[e, b] on primal 1-cochains e and primal 2-cochains b,
/// with exact coefficient gradients (which are the twisted functional derivatives).
class ConstitutiveModel {
 public:
  virtual ~ConstitutiveModel() = default;

  const ModelSpec& spec() const noexcept { return spec_; }
  const Discretization& discretization() const noexcept { return *disc_; }
  const GridSpec& grid() const noexcept { return disc_->grid; }

  virtual double k_eval(const Cochain& e, const Cochain& b) const = 0;
  /// Dual 2-cochain; -dk_de is the discrete polarization.
  virtual Cochain dk_de(const Cochain& e, const Cochain& b) const = 0;
  /// Dual 1-cochain; -dk_db is the discrete magnetization.
  virtual Cochain dk_db(const Cochain& e, const Cochain& b) const = 0;
  /// Directional derivative of dk_de (ee, be) or dk_db (eb, bb) along v.
  virtual Cochain hessian_action(const Cochain& e, const Cochain& b, HessianBlock which,
                                 const Cochain& v) const = 0;

  /// d~ = star1 e - fourpi dk_de
  Cochain d_from_e(const Cochain& e, const Cochain& b) const;
  /// h~ = star2 b + fourpi dk_db
  Cochain h_from_b(const Cochain& e, const Cochain& b) const;

  /// Inverts d_from_e in e for fixed b. Throws DivergenceError when the iteration
  /// budget is exhausted and NotInvertibleError on loss of monotonicity.
  virtual Cochain e_from_db(const Cochain& dtilde, const Cochain& b, const SolveOptions& opts = {},
                            SolveStats* stats = nullptr) const;
  /// Model-agnostic Newton-Krylov inversion from the vacuum initial guess.
  Cochain e_from_db_iterative(const Cochain& dtilde, const Cochain& b, const SolveOptions& opts = {},
                              SolveStats* stats = nullptr) const;

  /// Largest phase-speed multiplier over the grid's resolvable modes (>= 1); used for
  /// the default time step.
  virtual double speed_factor() const { return 1.0; }

 protected:
  ConstitutiveModel(ModelSpec spec, std::shared_ptr<const Discretization> disc)
      : spec_(std::move(spec)), disc_(std::move(disc)) {}

  /// Newton iteration on d_from_e(e, b) = d~ with CG on star1 - fourpi H_ee.
  Cochain newton_solve(const Cochain& dtilde, const Cochain& b, Cochain e, const SolveOptions& opts,
                       SolveStats* stats) const;

  Cochain zero_dual(int degree) const { return Cochain(grid(), Complex::dual, degree); }

 private:
  ModelSpec spec_;
  std::shared_ptr<const Discretization> disc_;
};

/// Validates the model parameters against the grid and builds the model.
std::unique_ptr<ConstitutiveModel> make_model(const ModelSpec& spec,
                                              std::shared_ptr<const Discretization> disc);

/// Positive root of a rho + b rho^3 = q for a > 0, b >= 0, q >= 0.
double kerr_scalar_root(double a, double b, double q);

/// Largest eigenvalue of the discrete Hodge Laplacian on the grid.
double laplacian_max_eigenvalue(const GridSpec& grid, const MaterialMetric& metric);

}  // namespace splitmax
