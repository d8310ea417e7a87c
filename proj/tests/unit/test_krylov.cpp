#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "splitmax/error.hpp"
#include "splitmax/krylov.hpp"

using namespace splitmax;

namespace {

struct Dense {
  std::size_t n;
  std::vector<double> a;
  krylov::LinearOperator op() const {
    return [this](std::span<const double> x, std::span<double> y) {
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * x[j];
        y[i] = s;
      }
    };
  }
  std::vector<double> times(const std::vector<double>& x) const {
    std::vector<double> y(n);
    op()(x, y);
    return y;
  }
};

Dense random_spd(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> b(n * n);
  for (auto& v : b) v = u(rng);
  Dense d{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = i == j ? static_cast<double>(n) : 0.0;
      for (std::size_t k = 0; k < n; ++k) s += b[i * n + k] * b[j * n + k];
      d.a[i * n + j] = s;
    }
  return d;
}

}  // namespace

TEST(Krylov, ConjugateGradientSolvesSpdSystem) {
  const Dense a = random_spd(30, 1);
  std::vector<double> xs(30);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = std::sin(1.0 + i);
  const auto b = a.times(xs);
  std::vector<double> x(30, 0.0);
  krylov::Options opt;
  opt.rtol = 1e-14;
  const auto r = krylov::conjugate_gradient(a.op(), b, x, opt);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.iterations, 60);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(x[i], xs[i], 1e-11);
}

TEST(Krylov, ZeroRightHandSideReturnsImmediately) {
  const Dense a = random_spd(5, 2);
  std::vector<double> b(5, 0.0), x(5, 0.0);
  const auto r = krylov::conjugate_gradient(a.op(), b, x, {});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
}

TEST(Krylov, NegativeCurvatureIsReported) {
  Dense a{2, {1, 0, 0, -1}};
  std::vector<double> b{1, 1}, x(2, 0.0);
  EXPECT_THROW(krylov::conjugate_gradient(a.op(), b, x, {}), NotInvertibleError);
}

TEST(Krylov, GmresSolvesNonsymmetricSystem) {
  Dense a = random_spd(40, 3);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = i + 1; j < 40; ++j) {
      const double s = u(rng);
      a.a[i * 40 + j] += s;
      a.a[j * 40 + i] -= s;
    }
  std::vector<double> xs(40);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = std::cos(0.3 * i);
  const auto b = a.times(xs);
  std::vector<double> x(40, 0.0);
  krylov::Options opt;
  opt.rtol = 1e-13;
  opt.restart = 15;
  const auto r = krylov::gmres(a.op(), b, x, opt);
  EXPECT_TRUE(r.converged);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(x[i], xs[i], 1e-10);
}

TEST(Krylov, IterationLimitIsReported) {
  const Dense a = random_spd(50, 5);
  std::vector<double> b(50, 1.0), x(50, 0.0);
  krylov::Options opt;
  opt.rtol = 1e-15;
  opt.max_iter = 2;
  const auto r = krylov::conjugate_gradient(a.op(), b, x, opt);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 2);
}
