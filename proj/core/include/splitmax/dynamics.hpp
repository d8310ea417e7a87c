#pragma once

#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "splitmax/cochain.hpp"
#include "splitmax/constitutive.hpp"
#include "splitmax/incidence.hpp"

namespace splitmax {

/// Evolving fields: displacement d~ (dual 2-cochain) and flux b (primal 2-cochain).
struct SimState {
  Cochain dtilde;
  Cochain b;
  double t = 0.0;

  static SimState zero(const GridSpec& grid);
  /// Throws MismatchError unless dtilde is dual 2 and b primal 2 on the same grid.
  void validate() const;
};

/// Twisted functional derivative of F with respect to (d~, b).
struct FunctionalGradient {
  Cochain wrt_d;  // primal 1-cochain
  Cochain wrt_b;  // dual 1-cochain
};

/// Time derivatives of the state.
struct Rates {
  Cochain dtilde;
  Cochain b;
};

struct StepStats {
  int newton_iterations = 0;
  int krylov_iterations = 0;
  double residual = 0.0;
};

/// H = K - <e, dk_de> + (<e, star1 e> + <b, star2 b>) / (2 fourpi), e = e_from_db(d~, b).
double hamiltonian(const ConstitutiveModel& model, const SimState& s, const SolveOptions& opts = {});

/// {F, G} = fourpi c [<F_d, d~ G_b> - <G_d, d~ F_b>]. References no metric data.
double bracket(const DeRhamComplex& complex, const FunctionalGradient& f, const FunctionalGradient& g,
               double c = 1.0, double fourpi = 4.0 * std::numbers::pi);

/// (e / fourpi, h~ / fourpi)
FunctionalGradient ham_gradient(const ConstitutiveModel& model, const SimState& s,
                                const SolveOptions& opts = {});

/// (c d~ h~, -c d e)
Rates rhs(const ConstitutiveModel& model, const SimState& s, const SolveOptions& opts = {});

/// Implicit midpoint step. The stage is solved for the midpoint electric field with
/// Newton-Krylov to an infinity-norm residual of `tol`.
SimState step_midpoint(const ConstitutiveModel& model, const SimState& s, double dt, double tol = 1e-10,
                       StepStats* stats = nullptr);

/// Leapfrog (half b, full d~, half b) for linear models.
SimState step_splitting_linear(const ConstitutiveModel& model, const SimState& s, double dt,
                               const SolveOptions& opts = {}, StepStats* stats = nullptr);

/// The same leapfrog carried out on primal representatives d1 = star1^{-1} d~, with the
/// d~ update expressed through the codifferential. Linear models only.
SimState step_single_complex(const ConstitutiveModel& model, const SimState& s, double dt,
                             const SolveOptions& opts = {}, StepStats* stats = nullptr);

/// (|d~_2 d~|_inf, |d_2 b|_inf)
std::pair<double, double> casimirs(const DeRhamComplex& complex, const SimState& s);

/// 0.5 min(h) / (c sqrt(3) speed_factor)
double default_dt(const ConstitutiveModel& model);

/// F(z) = 1/2 z^T Q z + q^T z on the flattened state z = (d~ values, b values).
struct QuadraticFunctional {
  std::size_t dim = 0;
  std::vector<double> hessian;  // dim x dim, row-major, symmetric
  std::vector<double> linear;   // dim

  /// Random symmetric Q and q with entries uniform in [-scale, scale].
  static QuadraticFunctional random(std::size_t dim, unsigned long long seed, double scale = 1.0);

  double value(std::span<const double> z) const;
  std::vector<double> gradient(std::span<const double> z) const;
};

/// Splits a flattened gradient into (wrt_d, wrt_b).
FunctionalGradient to_gradient(const GridSpec& grid, std::span<const double> flat);
/// Flattens (d~, b).
std::vector<double> flatten(const SimState& s);

/// |{{F,G},H} + {{G,H},F} + {{H,F},G}| at state s, using the exact gradients of the
/// nested brackets of constant-Hessian functionals.
double jacobi_check(const DeRhamComplex& complex, const QuadraticFunctional& f,
                    const QuadraticFunctional& g, const QuadraticFunctional& h, const SimState& s,
                    double c = 1.0, double fourpi = 4.0 * std::numbers::pi);

}  // namespace splitmax
