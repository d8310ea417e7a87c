#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "splitmax/error.hpp"
#include "splitmax/exterior3.hpp"

using namespace splitmax::ext3;

namespace {

Metric3 random_spd(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat3 a{};
  for (auto& row : a)
    for (auto& x : row) x = u(rng);
  Mat3 g{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * a[j][k];
      g[i][j] = s + (i == j ? 0.5 : 0.0);
    }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < i; ++j) g[i][j] = g[j][i];
  return Metric3(g);
}

Vec3 random_vec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return Vec3{{u(rng), u(rng), u(rng)}};
}

Form random_form(std::mt19937_64& rng, int degree, bool twisted = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Form f(degree, twisted);
  for (int i = 0; i < f.size(); ++i) f[i] = u(rng);
  return f;
}

// Inverse by Gauss-Jordan elimination, independent of the library's adjugate.
Mat3 gauss_inverse(Mat3 a) {
  Mat3 inv{};
  for (int i = 0; i < 3; ++i) inv[i][i] = 1.0;
  for (int c = 0; c < 3; ++c) {
    int p = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    std::swap(inv[c], inv[p]);
    const double d = a[c][c];
    for (int k = 0; k < 3; ++k) {
      a[c][k] /= d;
      inv[c][k] /= d;
    }
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const double f = a[r][c];
      for (int k = 0; k < 3; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

TEST(Metric3, RejectsAsymmetricAndIndefinite) {
  Mat3 asym{{{1, 0.1, 0}, {0, 1, 0}, {0, 0, 1}}};
  EXPECT_THROW(Metric3{asym}, splitmax::ValidationError);
  Mat3 indef{{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}};
  EXPECT_THROW(Metric3{indef}, splitmax::ValidationError);
}

TEST(Metric3, InverseTimesMetricIsIdentity) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const Metric3 g = random_spd(rng);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += g.g_inv()[i][k] * g.g()[k][j];
        EXPECT_NEAR(s, i == j ? 1.0 : 0.0, 1e-13);
      }
  }
}

TEST(Flat, IdentityAndDiagonal) {
  const Form a = flat(Metric3::identity(), Vec3{{1, 0, 0}});
  EXPECT_EQ(a.degree(), 1);
  EXPECT_FALSE(a.twisted());
  EXPECT_EQ(a[0], 1.0);
  EXPECT_EQ(a[1], 0.0);
  EXPECT_EQ(a[2], 0.0);
  const Form b = flat(Metric3::diagonal(4, 1, 1), Vec3{{1, 0, 0}});
  EXPECT_EQ(b[0], 4.0);
  EXPECT_EQ(b[1], 0.0);
  EXPECT_EQ(b[2], 0.0);
}

TEST(Flat, MatchesIndexContraction) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    const Metric3 g = random_spd(rng);
    const Vec3 v = random_vec(rng);
    const Form a = flat(g, v);
    for (int i = 0; i < 3; ++i) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j) s += g.g()[i][j] * v[j];
      EXPECT_NEAR(a[i], s, 1e-14);
    }
  }
}

TEST(Sharp, IdentityAndDiagonal) {
  const Vec3 v = sharp(Metric3::identity(), Form(1, {0, 1, 0}));
  EXPECT_EQ(v[0], 0.0);
  EXPECT_EQ(v[1], 1.0);
  EXPECT_EQ(v[2], 0.0);
  const Vec3 w = sharp(Metric3::diagonal(4, 1, 1), Form(1, {4, 0, 0}));
  EXPECT_DOUBLE_EQ(w[0], 1.0);
  EXPECT_EQ(w[1], 0.0);
  EXPECT_EQ(w[2], 0.0);
}

TEST(Sharp, RoundTripOnRandomMetrics) {
  std::mt19937_64 rng(13);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Metric3 g = random_spd(rng);
    const Vec3 v = random_vec(rng);
    const Vec3 r = sharp(g, flat(g, v));
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(r[i] - v[i]));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(InteriorVol, Examples) {
  const Form a = interior_vol(Metric3::identity(), Vec3{{0, 0, 1}});
  EXPECT_EQ(a.degree(), 2);
  EXPECT_TRUE(a.twisted());
  EXPECT_EQ(a[0], 0.0);
  EXPECT_EQ(a[1], 0.0);
  EXPECT_EQ(a[2], 1.0);
  const Metric3 g = Metric3::diagonal(4, 1, 1);
  const Form b = interior_vol(g, Vec3{{1, 0, 0}});
  const double sqrt_det = std::sqrt(det3(g.g()));
  EXPECT_DOUBLE_EQ(b[0], sqrt_det * 1.0);
  EXPECT_DOUBLE_EQ(b[0], 2.0);
}

TEST(InteriorVol, EqualsHodgeOfFlat) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const Metric3 g = random_spd(rng);
    const Vec3 v = random_vec(rng);
    const Form a = interior_vol(g, v);
    const Form b = hodge(g, flat(g, v));
    EXPECT_EQ(a.twisted(), b.twisted());
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i], 1e-13);
  }
}

TEST(Hodge, IdentityBasis) {
  const Metric3 g = Metric3::identity();
  const Form s = hodge(g, Form(1, {1, 0, 0}));
  EXPECT_EQ(s.degree(), 2);
  EXPECT_TRUE(s.twisted());
  EXPECT_EQ(s[0], 1.0);
  EXPECT_EQ(s[1], 0.0);
  EXPECT_EQ(s[2], 0.0);
  const Form v = hodge(g, Form::scalar(1.0));
  EXPECT_EQ(v.degree(), 3);
  EXPECT_EQ(v[0], 1.0);
  const Form one = hodge(g, Form::volume(1.0));
  EXPECT_EQ(one.degree(), 0);
  EXPECT_EQ(one[0], 1.0);
}

// Solve (a, b) sqrt(det g) = coeff(a ^ star b) for star b over all basis a, using an
// independently inverted metric.
TEST(Hodge, DefiningRelationOracle) {
  std::mt19937_64 rng(19);
  std::vector<Metric3> metrics{Metric3::diagonal(4, 1, 1)};
  for (int t = 0; t < 20; ++t) metrics.push_back(random_spd(rng));
  for (const auto& g : metrics) {
    const Mat3 ginv = gauss_inverse(g.g());
    const double sd = std::sqrt(det3(g.g()));
    for (int j = 0; j < 3; ++j) {
      Form b(1);
      b[j] = 1.0;
      const Form s = hodge(g, b);
      // a = dx^i: a ^ x (1-form wedge 2-form) has coefficient x_i, so x_i = sd g^{ij}.
      for (int i = 0; i < 3; ++i) EXPECT_NEAR(s[i], sd * ginv[i][j], 1e-13);
    }
  }
  const Form s = hodge(Metric3::diagonal(4, 1, 1), Form(1, {1, 0, 0}));
  EXPECT_DOUBLE_EQ(s[0], 0.5);
}

TEST(Hodge, InnerProductRelationAllDegrees) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    const Metric3 g = random_spd(rng);
    for (int k = 0; k <= 3; ++k) {
      const Form a = random_form(rng, k);
      const Form b = random_form(rng, k);
      const Form w = wedge(a, hodge(g, b));
      EXPECT_NEAR(inner(g, a, b) * g.sqrt_det(), w[0], 1e-13);
    }
  }
}

TEST(Hodge, DoubleHodgeIsIdentity) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 50; ++t) {
    const Metric3 g = random_spd(rng);
    for (int k = 0; k <= 3; ++k) {
      const Form a = random_form(rng, k);
      const Form r = hodge(g, hodge(g, a));
      EXPECT_EQ(r.degree(), k);
      EXPECT_EQ(r.twisted(), a.twisted());
      for (int i = 0; i < a.size(); ++i) EXPECT_NEAR(r[i], a[i], 1e-13);
    }
  }
}

TEST(Wedge, BasisAndOverflow) {
  const Form w = wedge(Form(1, {1, 0, 0}), Form(1, {0, 1, 0}));
  EXPECT_EQ(w.degree(), 2);
  EXPECT_EQ(w[0], 0.0);
  EXPECT_EQ(w[1], 0.0);
  EXPECT_EQ(w[2], 1.0);
  try {
    wedge(Form(2), Form(2));
    FAIL() << "expected overflow error";
  } catch (const splitmax::ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("degree exceeds dimension"), std::string::npos);
  }
}

TEST(Wedge, SelfWedgeOfOneFormVanishes) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const Form a = random_form(rng, 1);
    const Form w = wedge(a, a);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(w[i], 0.0);
  }
}

TEST(Wedge, GradedAntisymmetryAndTwist) {
  // Basis inputs: exact.
  for (int j = 0; j <= 3; ++j)
    for (int k = 0; j + k <= 3; ++k) {
      const int nj = (j == 1 || j == 2) ? 3 : 1, nk = (k == 1 || k == 2) ? 3 : 1;
      for (int p = 0; p < nj; ++p)
        for (int q = 0; q < nk; ++q) {
          Form a(j), b(k, true);
          a[p] = 1.0;
          b[q] = 1.0;
          const Form ab = wedge(a, b), ba = wedge(b, a);
          const double sign = ((j * k) % 2 == 0) ? 1.0 : -1.0;
          EXPECT_TRUE(ab.twisted());
          for (int i = 0; i < ab.size(); ++i) EXPECT_EQ(ab[i], sign * ba[i]);
        }
    }
  std::mt19937_64 rng(37);
  for (int t = 0; t < 50; ++t) {
    const Form a = random_form(rng, 1), b = random_form(rng, 2, true);
    const Form ab = wedge(a, b), ba = wedge(b, a);
    EXPECT_NEAR(ab[0], ba[0], 1e-14);
    const Form c = random_form(rng, 1, true), d = random_form(rng, 1, true);
    const Form cd = wedge(c, d), dc = wedge(d, c);
    EXPECT_FALSE(cd.twisted());
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(cd[i], -dc[i], 1e-14);
  }
}

TEST(Wedge, CrossProductOracle) {
  std::mt19937_64 rng(41);
  const Metric3 g = Metric3::identity();
  for (int t = 0; t < 100; ++t) {
    const Vec3 u = random_vec(rng), v = random_vec(rng);
    const Vec3 x{{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]}};
    const Form w = wedge(flat(g, u), flat(g, v));
    const Form r = interior_vol(g, x);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(w[i], r[i], 1e-14);
  }
}

TEST(VerifyIdentities, StandardBasisVolume) {
  const Metric3 g = Metric3::identity();
  const Vec3 e1{{1, 0, 0}}, e2{{0, 1, 0}}, e3{{0, 0, 1}};
  EXPECT_EQ(volume(g, e1, e2, e3), 1.0);
  const Form top = wedge(wedge(flat(g, e1), flat(g, e2)), flat(g, e3));
  EXPECT_EQ(hodge(g, top)[0], 1.0);
}

TEST(VerifyIdentities, IdentityAndDiagonalMetrics) {
  const IdentityReport a = verify_identities(Metric3::identity(), 100, 1);
  EXPECT_EQ(a.trials, 100);
  EXPECT_LT(a.max_residual(), 1e-12);
  const IdentityReport b = verify_identities(Metric3::diagonal(4, 1, 1), 100, 2);
  EXPECT_LT(b.max_residual(), 1e-12);
  std::mt19937_64 rng(43);
  for (int t = 0; t < 10; ++t) {
    const IdentityReport r = verify_identities(random_spd(rng), 100, 3 + t);
    EXPECT_LT(r.max_residual(), 1e-12);
  }
}

TEST(VerifyIdentities, DeterministicForSeed) {
  const IdentityReport a = verify_identities(Metric3::diagonal(2, 3, 5), 20, 99);
  const IdentityReport b = verify_identities(Metric3::diagonal(2, 3, 5), 20, 99);
  EXPECT_EQ(a.max_residual(), b.max_residual());
}

TEST(Orientation, StraightAndTwistedUnderReflection) {
  // Straight top form picks up the Jacobian sign; a twisted density does not.
  const Form vol_straight = reflect_x1(Form::volume(1.0, false));
  const Form vol_twisted = reflect_x1(Form::volume(1.0, true));
  EXPECT_EQ(vol_straight[0], -1.0);
  EXPECT_EQ(vol_twisted[0], 1.0);
  // A twisted 1-form evaluates with the opposite sign to the straight one.
  const Form a = reflect_x1(Form(1, {1, 2, 3}, false));
  const Form b = reflect_x1(Form(1, {1, 2, 3}, true));
  for (int i = 0; i < 3; ++i) EXPECT_EQ(a[i], -b[i]);
  // Pullback commutes with wedge.
  std::mt19937_64 rng(47);
  for (int t = 0; t < 20; ++t) {
    const Form u = random_form(rng, 1), v = random_form(rng, 2, true);
    const Form lhs = reflect_x1(wedge(u, v));
    const Form rhs = wedge(reflect_x1(u), reflect_x1(v));
    EXPECT_NEAR(lhs[0], rhs[0], 1e-14);
  }
}

TEST(Orientation, IdentityResidualsUnchangedUnderReflection) {
  const Metric3 g = Metric3::diagonal(4, 1, 2);
  const IdentityReport a = verify_identities(g, 50, 5);
  const IdentityReport b = verify_identities(reflect_x1(g), 50, 5);
  EXPECT_LT(a.max_residual(), 1e-12);
  EXPECT_LT(b.max_residual(), 1e-12);
  EXPECT_NEAR(a.max_residual(), b.max_residual(), 1e-14);
}
