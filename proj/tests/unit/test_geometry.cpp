#include <gtest/gtest.h>

#include <cmath>

#include "jetgeo/error.hpp"
#include "jetgeo/evaluate.hpp"
#include "jetgeo/frames.hpp"
#include "jetgeo/geometry.hpp"
#include "jetgeo/identities.hpp"
#include "jetgeo/parse.hpp"
#include "jetgeo/zero_test.hpp"
#include "random_geometry.hpp"

using namespace jetgeo;

namespace {

const JetSpace kSpace = JetSpace::standard(2);

Expr P(const char* s) { return parse(s, kSpace.allowed_names()); }

TimeMetric H(const char* s) { return make_time_metric(kSpace, P(s)); }

SpatialMetric flat_phi() { return make_spatial_metric(kSpace, identity_mat(2)); }

SpatialMetric sphere_phi() {
  Mat phi = identity_mat(2);
  phi[1][1] = P("sin(x1)^2");
  return make_spatial_metric(kSpace, phi);
}

// (h'/2h) by central differences at t.
double fd_christoffel_time(const Expr& h, double t) {
  const double d = 1e-6;
  double hp = (evaluate(h, {{"t", t + d}}) - evaluate(h, {{"t", t - d}})) / (2 * d);
  return hp / (2 * evaluate(h, {{"t", t}}));
}

}  // namespace

TEST(ChristoffelTime, Examples) {
  EXPECT_TRUE(christoffel_time(kSpace, H("1")).is_zero());
  EXPECT_TRUE(is_zero(christoffel_time(kSpace, H("exp(2*t)")) - Expr(1)));
  EXPECT_TRUE(is_zero(christoffel_time(kSpace, H("t^2")) - P("1/t")));
}

TEST(ChristoffelTime, MatchesFiniteDifferences) {
  for (const char* h : {"exp(2*t)", "t^2", "1 + t + 3*t^2", "cosh(t)"}) {
    Expr H1 = christoffel_time(kSpace, H(h));
    for (int k = 0; k < 10; ++k) {
      double t = 0.3 + 0.09 * k;
      EXPECT_NEAR(evaluate(H1, {{"t", t}}), fd_christoffel_time(P(h), t), 1e-6) << h;
    }
  }
}

TEST(ChristoffelSpatial, FlatAndSphere) {
  Arr3 g = christoffel_spatial(kSpace, flat_phi());
  for (const Mat& m : g)
    for (const Vec& v : m)
      for (const Expr& e : v) EXPECT_TRUE(e.is_zero());
  Arr3 s = christoffel_spatial(kSpace, sphere_phi());
  EXPECT_TRUE(is_zero(s[0][1][1] - P("-sin(x1)*cos(x1)")));
  EXPECT_TRUE(is_zero(s[1][0][1] - P("cos(x1)/sin(x1)")));
  EXPECT_TRUE(is_zero(s[1][1][0] - P("cos(x1)/sin(x1)")));
  EXPECT_TRUE(s[0][0][0].is_zero());
}

TEST(ChristoffelSpatial, SymmetricInLowerIndices) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Arr3 g = christoffel_spatial(kSpace, oracle::random_metric(kSpace, seed).phi);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) EXPECT_TRUE(is_zero(g[i][j][k] - g[i][k][j]));
  }
}

TEST(Metric, Validation) {
  EXPECT_THROW(make_time_metric(kSpace, P("x1")), ShapeMismatch);
  EXPECT_THROW(make_time_metric(kSpace, Expr(0)), SingularMetric);
  Mat asym = identity_mat(2);
  asym[0][1] = P("x1");
  EXPECT_THROW(make_spatial_metric(kSpace, asym), ShapeMismatch);
  Mat dep = identity_mat(2);
  dep[0][0] = P("t");
  EXPECT_THROW(make_spatial_metric(kSpace, dep), ShapeMismatch);
  Mat sing = zero_mat(2);
  sing[0][0] = Expr(1);
  EXPECT_THROW(make_spatial_metric(kSpace, sing), SingularMetric);
  EXPECT_THROW(make_spatial_metric(kSpace, identity_mat(3)), ShapeMismatch);
}

TEST(Algebra, DeterminantAndInverse) {
  Mat m = {{P("x1"), Expr(1)}, {Expr(2), P("x2")}};
  EXPECT_EQ(determinant(m), P("x1*x2 - 2"));
  Mat inv = inverse(m);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Expr s;
      for (int k = 0; k < 2; ++k) s += m[i][k] * inv[k][j];
      EXPECT_TRUE(is_zero(s - Expr(i == j ? 1 : 0)));
    }
  EXPECT_THROW(inverse(zero_mat(2)), SingularMetric);
}

TEST(CanonicalNlc, Examples) {
  NonlinearConnection flat = canonical_nlc(kSpace, H("1"), flat_phi());
  for (int i = 0; i < 2; ++i) {
    EXPECT_TRUE(flat.M[i].is_zero());
    for (int j = 0; j < 2; ++j) EXPECT_TRUE(flat.N[i][j].is_zero());
  }
  NonlinearConnection e = canonical_nlc(kSpace, H("exp(2*t)"), flat_phi());
  for (int j = 0; j < 2; ++j) EXPECT_TRUE(is_zero(e.M[j] + kSpace.y(j)));
}

TEST(CanonicalNlc, SphereSpatialPart) {
  NonlinearConnection s = canonical_nlc(kSpace, H("1"), sphere_phi());
  Arr3 g = christoffel_spatial(kSpace, sphere_phi());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Expr want;
      for (int m = 0; m < 2; ++m) want += g[i][j][m] * kSpace.y(m);
      EXPECT_TRUE(is_zero(s.N[i][j] - want));
    }
}

TEST(Berwald, Examples) {
  GammaConnection flat = berwald_connection(kSpace, H("1"), flat_phi());
  EXPECT_TRUE(flat.Gbar.is_zero());
  for (int k = 0; k < 2; ++k) {
    EXPECT_TRUE(flat.Lbar[k].is_zero());
    EXPECT_TRUE(flat.Cbar[k].is_zero());
    for (int i = 0; i < 2; ++i) {
      EXPECT_TRUE(flat.G[k][i].is_zero());
      EXPECT_TRUE(flat.Gv[k][i].is_zero());
      for (int j = 0; j < 2; ++j) {
        EXPECT_TRUE(flat.L[k][i][j].is_zero());
        EXPECT_TRUE(flat.Lv[k][i][j].is_zero());
        EXPECT_TRUE(flat.C[k][i][j].is_zero());
        EXPECT_TRUE(flat.Cv[k][i][j].is_zero());
      }
    }
  }
  GammaConnection e = berwald_connection(kSpace, H("exp(2*t)"), flat_phi());
  EXPECT_TRUE(is_zero(e.Gbar - Expr(1)));
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i) EXPECT_TRUE(is_zero(e.Gv[k][i] + Expr(k == i ? 1 : 0)));

  GammaConnection s = berwald_connection(kSpace, H("1"), sphere_phi());
  EXPECT_TRUE(is_zero(s.L[0][1][1] - P("-sin(x1)*cos(x1)")));
  EXPECT_TRUE(is_zero(s.Lv[0][1][1] - P("-sin(x1)*cos(x1)")));
}

TEST(SpatialRiemann, FlatAndSphere) {
  Arr4 flat = spatial_riemann(kSpace, flat_phi());
  for (const Arr3& a : flat)
    for (const Mat& m : a)
      for (const Vec& v : m)
        for (const Expr& e : v) EXPECT_TRUE(e.is_zero());
  // Unit sphere, r^k_mij = delta^k_j phi_mi - delta^k_i phi_mj.
  Arr4 r = spatial_riemann(kSpace, sphere_phi());
  EXPECT_TRUE(is_zero(r[0][1][0][1] + P("sin(x1)^2")));
  EXPECT_TRUE(is_zero(r[0][1][1][0] - P("sin(x1)^2")));
  EXPECT_TRUE(is_zero(r[1][0][1][0] + Expr(1)));
}

TEST(SpatialRiemann, AntisymmetricAndBianchi) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Arr4 r = spatial_riemann(kSpace, oracle::random_metric(kSpace, seed).phi);
    for (int k = 0; k < 2; ++k)
      for (int m = 0; m < 2; ++m)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            EXPECT_TRUE(is_zero(r[k][m][i][j] + r[k][m][j][i]));
            EXPECT_TRUE(is_zero(r[k][m][i][j] + r[k][i][j][m] + r[k][j][m][i]));
          }
  }
}

TEST(CanonicalNlc, BracketR1jVanishes) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    oracle::MetricPair m = oracle::random_metric(kSpace, seed, true);
    Brackets br = bracket_tensors(canonical_nlc(kSpace, m.h, m.phi));
    for (int r = 0; r < 2; ++r)
      for (int j = 0; j < 2; ++j) EXPECT_TRUE(is_zero(br.R1j[r][j])) << seed;
  }
}

TEST(Dimensions, OneAndThree) {
  for (int n : {1, 3}) {
    JetSpace sp = JetSpace::standard(n);
    Mat phi = identity_mat(n);
    phi[0][0] = Expr(1) + sp.x(n - 1).pow(2);
    GammaConnection b = berwald_connection(sp, make_time_metric(sp, sp.t()),
                                           make_spatial_metric(sp, phi));
    EXPECT_EQ(b.n(), n);
    EXPECT_TRUE(is_zero(b.Gbar - Expr(1) / (sp.t() * Expr(2))));
  }
}
