#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "splitmax/constitutive.hpp"
#include "splitmax/derham.hpp"
#include "splitmax/error.hpp"
#include "splitmax/krylov.hpp"
#include "test_support.hpp"

using namespace splitmax;
using splitmax::testutil::random_cochain;

namespace {

constexpr double kPi = std::numbers::pi;

std::shared_ptr<const Discretization> make_disc(const GridSpec& g, const MaterialMetric& m = {}) {
  return std::make_shared<const Discretization>(Discretization::build(g, m));
}

ModelSpec spec_of(ModelVariant v) { return ModelSpec{v}; }

std::vector<ModelSpec> all_models() {
  return {spec_of(Vacuum{}), spec_of(Kerr{0.1, 0.05}), spec_of(NonlocalDispersive{0.1, 0.002}),
          spec_of(Magnetoelectric{0.2})};
}

// Smooth periodic field: a few Fourier modes with seeded coefficients.
ComponentField smooth_field(const GridSpec& g, unsigned seed, double amp) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::array<std::array<double, 4>, 3> c{};
  for (auto& row : c)
    for (auto& v : row) v = u(rng);
  const double lx = g.length(0), ly = g.length(1), lz = g.length(2);
  return [=](const Point& x) -> Components {
    Components out{};
    for (int a = 0; a < 3; ++a) {
      out[a] = amp * (c[a][0] + c[a][1] * std::sin(2 * kPi * x[0] / lx) +
                      c[a][2] * std::cos(2 * kPi * x[1] / ly) + c[a][3] * std::sin(2 * kPi * x[2] / lz));
    }
    return out;
  };
}

struct Fixture {
  GridSpec grid{{8, 8, 8}, {0.125, 0.125, 0.125}};
  std::shared_ptr<const Discretization> disc = make_disc(grid, MaterialMetric(1.5, 0.8, 1.2));
  Cochain e = de_rham_map(grid, smooth_field(grid, 1, 1.0), Complex::primal, 1);
  Cochain b = de_rham_map(grid, smooth_field(grid, 2, 1.0), Complex::primal, 2);
};

double rel_norm_diff(const Cochain& a, const Cochain& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

}  // namespace

TEST(ModelSpec, NamesAndLinearity) {
  EXPECT_EQ(spec_of(Vacuum{}).name(), "vacuum");
  EXPECT_EQ(spec_of(Kerr{}).name(), "kerr");
  EXPECT_EQ(spec_of(NonlocalDispersive{}).name(), "nonlocal_dispersive");
  EXPECT_EQ(spec_of(Magnetoelectric{}).name(), "magnetoelectric");
  EXPECT_TRUE(spec_of(Vacuum{}).linear());
  EXPECT_TRUE(spec_of(NonlocalDispersive{}).linear());
  EXPECT_FALSE(spec_of(Kerr{}).linear());
  EXPECT_FALSE(spec_of(Magnetoelectric{}).linear());
}

TEST(ModelSpec, ValidationRejectsNonMonotoneParameters) {
  const auto disc = make_disc(GridSpec{{4, 4, 4}, {0.25, 0.25, 0.25}});
  EXPECT_THROW(make_model(spec_of(Kerr{-1.0 / (4 * kPi), 0.0}), disc), ValidationError);
  EXPECT_THROW(make_model(spec_of(Kerr{0.0, -0.1}), disc), ValidationError);
  EXPECT_THROW(make_model(spec_of(Magnetoelectric{-0.1}), disc), ValidationError);
  EXPECT_THROW(make_model(spec_of(NonlocalDispersive{-1.0, 0.0}), disc), ValidationError);
  // beta < 0 is admissible only while (1 + 4 pi alpha) + 4 pi beta lambda_max > 0.
  const double lmax = laplacian_max_eigenvalue(disc->grid, disc->metric);
  EXPECT_DOUBLE_EQ(lmax, 3 * 4 / (0.25 * 0.25));
  EXPECT_NO_THROW(make_model(spec_of(NonlocalDispersive{0.0, -0.5 / (4 * kPi * lmax)}), disc));
  EXPECT_THROW(make_model(spec_of(NonlocalDispersive{0.0, -2.0 / (4 * kPi * lmax)}), disc), ValidationError);
  ModelSpec bad_c = spec_of(Vacuum{});
  bad_c.c = 0.0;
  EXPECT_THROW(make_model(bad_c, disc), ValidationError);
}

TEST(Vacuum, EverythingVanishesAndMapsAreHodge) {
  Fixture f;
  const auto m = make_model(spec_of(Vacuum{}), f.disc);
  EXPECT_EQ(m->k_eval(f.e, f.b), 0.0);
  EXPECT_EQ(m->dk_de(f.e, f.b).max_abs(), 0.0);
  EXPECT_EQ(m->dk_db(f.e, f.b).max_abs(), 0.0);
  for (auto which : {HessianBlock::ee, HessianBlock::be}) {
    EXPECT_EQ(m->hessian_action(f.e, f.b, which, which == HessianBlock::ee ? f.e : f.b).max_abs(), 0.0);
  }
  EXPECT_EQ(testutil::max_abs_diff(m->d_from_e(f.e, f.b), f.disc->star[1].apply(f.e)), 0.0);
  EXPECT_EQ(testutil::max_abs_diff(m->h_from_b(f.e, f.b), f.disc->star[2].apply(f.b)), 0.0);
  const Cochain r = m->e_from_db(m->d_from_e(f.e, f.b), f.b);
  EXPECT_LE(testutil::max_abs_diff(r, f.e), 1e-13);
}

TEST(Kerr, ConstantFieldEnergy) {
  const GridSpec g{{4, 4, 4}, {0.25, 0.25, 0.25}};
  const auto m = make_model(spec_of(Kerr{1.0, 0.0}), make_disc(g));
  const double e0 = 0.7;
  const Cochain e = de_rham_map(g, ComponentField([&](const Point&) -> Components { return {e0, 0, 0}; }),
                                Complex::primal, 1);
  const Cochain b(g, Complex::primal, 2);
  EXPECT_NEAR(m->k_eval(e, b), -0.5 * e0 * e0 * 1.0, 1e-14);
}

TEST(Kerr, ConstantFieldPolarization) {
  const GridSpec g{{4, 4, 4}, {0.25, 0.5, 0.2}};
  const double chi1 = 0.3, chi3 = 0.7;
  const auto m = make_model(spec_of(Kerr{chi1, chi3}), make_disc(g));
  const Components e0{0.4, -0.2, 0.5};
  const double e2 = e0[0] * e0[0] + e0[1] * e0[1] + e0[2] * e0[2];
  const Cochain e = de_rham_map(g, ComponentField([&](const Point&) { return e0; }), Complex::primal, 1);
  const Cochain p = -1.0 * m->dk_de(e, Cochain(g, Complex::primal, 2));
  const Cochain expected = de_rham_map(g, ComponentField([&](const Point&) -> Components {
                                         const double f = chi1 + chi3 * e2;
                                         return {f * e0[0], f * e0[1], f * e0[2]};
                                       }),
                                       Complex::dual, 2);
  EXPECT_LE(testutil::max_abs_diff(p, expected), 1e-14);
}

TEST(Kerr, DisplacementDoublesAtUnitField) {
  const GridSpec g{{4, 4, 4}, {0.25, 0.25, 0.25}};
  const auto m = make_model(spec_of(Kerr{0.0, 1.0 / (4 * kPi)}), make_disc(g));
  const Cochain e = de_rham_map(g, ComponentField([](const Point&) -> Components { return {1, 0, 0}; }),
                                Complex::primal, 1);
  const Cochain b(g, Complex::primal, 2);
  const Cochain d = m->d_from_e(e, b);
  const Cochain expected = 2.0 * g.h[1] * g.h[2] * (1.0 / g.h[0]) * e;
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(d[i], expected[i], 1e-14);
}

TEST(Kerr, ScalarCubicRoot) {
  EXPECT_NEAR(kerr_scalar_root(1.0, 1.0, 2.0), 1.0, 1e-12);
  EXPECT_EQ(kerr_scalar_root(2.0, 0.0, 3.0), 1.5);
  EXPECT_EQ(kerr_scalar_root(1.0, 1.0, 0.0), 0.0);
  for (double q : {1e-6, 0.1, 1.0, 10.0, 1e4}) {
    const double r = kerr_scalar_root(1.3, 0.7, q);
    EXPECT_NEAR(1.3 * r + 0.7 * r * r * r, q, 1e-14 * std::max(1.0, q));
  }
  EXPECT_THROW(kerr_scalar_root(0.0, 1.0, 1.0), NotInvertibleError);
}

TEST(Kerr, PointwiseGuessIsExactForConstantFields) {
  const GridSpec g{{4, 4, 4}, {0.25, 0.25, 0.25}};
  const auto m = make_model(spec_of(Kerr{0.2, 0.3}), make_disc(g, MaterialMetric(2, 1, 0.5)));
  const Cochain e = de_rham_map(g, ComponentField([](const Point&) -> Components { return {0.3, -0.6, 0.9}; }),
                                Complex::primal, 1);
  const Cochain b(g, Complex::primal, 2);
  SolveStats st;
  const Cochain r = m->e_from_db(m->d_from_e(e, b), b, {}, &st);
  EXPECT_LE(testutil::max_abs_diff(r, e), 1e-13);
  EXPECT_EQ(st.newton_iterations, 0);
}

TEST(Kerr, DivergenceReportsResidual) {
  Fixture f;
  const auto m = make_model(spec_of(Kerr{0.1, 2.0}), f.disc);
  SolveOptions opts;
  opts.max_iter = 0;
  opts.tol = 1e-15;
  try {
    m->e_from_db(m->d_from_e(f.e, f.b), f.b, opts);
    FAIL();
  } catch (const DivergenceError& e) {
    EXPECT_GT(e.last_residual(), 0.0);
    EXPECT_EQ(e.iterations(), 0);
  }
}

TEST(Magnetoelectric, ConstantFieldEnergyAndMaps) {
  const GridSpec g{{4, 4, 4}, {0.25, 0.25, 0.25}};
  const double alpha = 1.0;
  const auto m = make_model(spec_of(Magnetoelectric{alpha}), make_disc(g));
  const Cochain e = de_rham_map(g, ComponentField([](const Point&) -> Components { return {1, 0, 0}; }),
                                Complex::primal, 1);
  const Cochain b = de_rham_map(g, ComponentField([](const Point&) -> Components { return {0, 0.6, 0.8}; }),
                                Complex::primal, 2);
  EXPECT_NEAR(m->k_eval(e, b), -0.5 * 1.0, 1e-14);
  const double fp = 4 * kPi;
  const Cochain d = m->d_from_e(e, b);
  const Cochain de = de_rham_map(g, ComponentField([&](const Point&) -> Components {
                                   return {1 + fp * alpha * 1.0, 0, 0};
                                 }),
                                 Complex::dual, 2);
  EXPECT_LE(testutil::max_abs_diff(d, de), 1e-13);
  const Cochain h = m->h_from_b(e, b);
  const Cochain he = de_rham_map(g, ComponentField([&](const Point&) -> Components {
                                   const double f = 1 - fp * alpha * 1.0;
                                   return {0, f * 0.6, f * 0.8};
                                 }),
                                 Complex::dual, 1);
  EXPECT_LE(testutil::max_abs_diff(h, he), 1e-13);
}

TEST(Magnetoelectric, ClosedFormMatchesIterativeSolve) {
  Fixture f;
  const auto m = make_model(spec_of(Magnetoelectric{0.3}), f.disc);
  const Cochain d = m->d_from_e(f.e, f.b);
  SolveOptions opts;
  opts.tol = 1e-14;
  const Cochain closed = m->e_from_db(d, f.b, opts);
  const Cochain iter = m->e_from_db_iterative(d, f.b, opts);
  EXPECT_LE(testutil::max_abs_diff(closed, iter), 1e-12);
  EXPECT_LE(testutil::max_abs_diff(closed, f.e), 1e-12);
}

TEST(Dispersive, QuadraticEnergyMatchesOperator) {
  Fixture f;
  const auto m = make_model(spec_of(NonlocalDispersive{0.1, 0.01}), f.disc);
  // K is homogeneous of degree 2: K = 1/2 <e, dk_de>.
  EXPECT_NEAR(m->k_eval(f.e, f.b), 0.5 * pairing(f.e, m->dk_de(f.e, f.b)), 1e-13);
  // beta = 0 reduces to a scaled Hodge star.
  const auto m0 = make_model(spec_of(NonlocalDispersive{0.25, 0.0}), f.disc);
  const Cochain expected = -0.25 * f.disc->star[1].apply(f.e);
  EXPECT_LE(testutil::max_abs_diff(m0->dk_de(f.e, f.b), expected), 1e-15);
}

class AllModels : public ::testing::TestWithParam<int> {};

TEST_P(AllModels, GradientMatchesFiniteDifferences) {
  Fixture f;
  const ModelSpec spec = all_models()[GetParam()];
  const auto m = make_model(spec, f.disc);
  const Cochain ge = m->dk_de(f.e, f.b);
  const Cochain gb = m->dk_db(f.e, f.b);
  for (int t = 0; t < 20; ++t) {
    const Cochain ve = random_cochain(f.grid, Complex::primal, 1, 300 + t, f.grid.h[0]);
    const Cochain vb = random_cochain(f.grid, Complex::primal, 2, 400 + t, f.grid.h[0] * f.grid.h[0]);
    const double eps = testutil::fd_step(1.0);
    const double fde = (m->k_eval(f.e + eps * ve, f.b) - m->k_eval(f.e - (eps * ve), f.b)) / (2 * eps);
    const double fdb = (m->k_eval(f.e, f.b + eps * vb) - m->k_eval(f.e, f.b - (eps * vb))) / (2 * eps);
    const double ae = pairing(ve, ge), ab = pairing(vb, gb);
    if (ae == 0.0) {
      EXPECT_LT(std::abs(fde), 1e-14);
    } else {
      EXPECT_LT(testutil::rel_err(fde, ae), 1e-6) << spec.name();
    }
    if (ab == 0.0) {
      EXPECT_LT(std::abs(fdb), 1e-14);
    } else {
      EXPECT_LT(testutil::rel_err(fdb, ab), 1e-6) << spec.name();
    }
  }
}

TEST_P(AllModels, HessianSymmetryAndMixedPartials) {
  Fixture f;
  const ModelSpec spec = all_models()[GetParam()];
  const auto m = make_model(spec, f.disc);
  const Cochain u = random_cochain(f.grid, Complex::primal, 1, 1);
  const Cochain v = random_cochain(f.grid, Complex::primal, 1, 2);
  const Cochain p = random_cochain(f.grid, Complex::primal, 2, 3);
  const Cochain q = random_cochain(f.grid, Complex::primal, 2, 4);
  auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  const double uv = pairing(u, m->hessian_action(f.e, f.b, HessianBlock::ee, v));
  const double vu = pairing(v, m->hessian_action(f.e, f.b, HessianBlock::ee, u));
  EXPECT_TRUE(close(uv, vu)) << uv << " " << vu;
  const double ub = pairing(u, m->hessian_action(f.e, f.b, HessianBlock::be, p));
  const double bu = pairing(p, m->hessian_action(f.e, f.b, HessianBlock::eb, u));
  EXPECT_TRUE(close(ub, bu)) << ub << " " << bu;
  const double pq = pairing(p, m->hessian_action(f.e, f.b, HessianBlock::bb, q));
  const double qp = pairing(q, m->hessian_action(f.e, f.b, HessianBlock::bb, p));
  EXPECT_TRUE(close(pq, qp)) << pq << " " << qp;
}

TEST_P(AllModels, HessianMatchesFiniteDifferenceOfGradient) {
  Fixture f;
  const ModelSpec spec = all_models()[GetParam()];
  const auto m = make_model(spec, f.disc);
  const Cochain ve = random_cochain(f.grid, Complex::primal, 1, 31, f.grid.h[0]);
  const Cochain vb = random_cochain(f.grid, Complex::primal, 2, 32, f.grid.h[0] * f.grid.h[0]);
  const double eps = testutil::fd_step(1.0);
  struct Case {
    HessianBlock which;
    bool along_e;
    bool grad_e;
  };
  for (const Case c : {Case{HessianBlock::ee, true, true}, Case{HessianBlock::be, false, true},
                       Case{HessianBlock::eb, true, false}, Case{HessianBlock::bb, false, false}}) {
    const Cochain& v = c.along_e ? ve : vb;
    const Cochain ep = c.along_e ? f.e + eps * v : f.e, em = c.along_e ? f.e - eps * v : f.e;
    const Cochain bp = c.along_e ? f.b : f.b + eps * v, bm = c.along_e ? f.b : f.b - eps * v;
    Cochain fd = c.grad_e ? m->dk_de(ep, bp) - m->dk_de(em, bm) : m->dk_db(ep, bp) - m->dk_db(em, bm);
    fd *= 1.0 / (2 * eps);
    const Cochain h = m->hessian_action(f.e, f.b, c.which, v);
    if (h.max_abs() == 0.0) {
      EXPECT_LT(fd.max_abs(), 1e-12);
    } else {
      EXPECT_LT(rel_norm_diff(fd, h), 1e-5) << spec.name() << " block " << static_cast<int>(c.which);
    }
  }
}

TEST_P(AllModels, RoundTripAtSolverTolerance) {
  Fixture f;
  const ModelSpec spec = all_models()[GetParam()];
  const auto m = make_model(spec, f.disc);
  SolveOptions opts;
  opts.tol = 1e-10;
  SolveStats st;
  const Cochain d = m->d_from_e(f.e, f.b);
  const Cochain r = m->e_from_db(d, f.b, opts, &st);
  EXPECT_LE(st.residual, opts.tol);
  Cochain res = m->d_from_e(r, f.b);
  res -= d;
  EXPECT_LE(res.max_abs(), opts.tol);
  // |J^{-1}| <= 1 / min star1 for a monotone model.
  EXPECT_LE(testutil::max_abs_diff(r, f.e), opts.tol / f.grid.h[0] * 2);
}

TEST_P(AllModels, ImplicitFunctionDerivative) {
  Fixture f;
  const ModelSpec spec = all_models()[GetParam()];
  const auto m = make_model(spec, f.disc);
  SolveOptions opts;
  opts.tol = 1e-13;
  const Cochain d = m->d_from_e(f.e, f.b);
  const Cochain v = random_cochain(f.grid, Complex::dual, 2, 77, f.grid.h[0] * f.grid.h[0]);
  const double eps = 1e-4;
  Cochain fd = m->e_from_db(d + eps * v, f.b, opts) - m->e_from_db(d - eps * v, f.b, opts);
  fd *= 1.0 / (2 * eps);
  // (star1 - fourpi H_ee)^{-1} v
  const auto s1 = f.disc->star[1].coefficients();
  Cochain dir(f.grid, Complex::primal, 1);
  const krylov::LinearOperator jac = [&](std::span<const double> x, std::span<double> y) {
    std::copy(x.begin(), x.end(), dir.values().begin());
    const Cochain hv = m->hessian_action(f.e, f.b, HessianBlock::ee, dir);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = s1[i] * x[i] - m->spec().fourpi * hv[i];
  };
  Cochain x(f.grid, Complex::primal, 1);
  krylov::Options ko;
  ko.rtol = 1e-14;
  krylov::conjugate_gradient(jac, v.values(), x.values(), ko);
  EXPECT_LT(rel_norm_diff(fd, x), 1e-4) << spec.name();
}

INSTANTIATE_TEST_SUITE_P(Models, AllModels, ::testing::Range(0, 4), [](const auto& info) {
  return all_models()[info.param].name();
});
