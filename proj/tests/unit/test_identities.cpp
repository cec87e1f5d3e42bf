#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "jetgeo/error.hpp"
#include "jetgeo/evaluate.hpp"
#include "jetgeo/identities.hpp"
#include "jetgeo/parse.hpp"
#include "random_geometry.hpp"

using namespace jetgeo;

namespace {

const JetSpace kSpace = JetSpace::standard(2);

Expr P(const char* s) { return parse(s, kSpace.allowed_names()); }

GammaConnection berwald(const char* h, bool sphere) {
  Mat phi = identity_mat(2);
  if (sphere) phi[1][1] = P("sin(x1)^2");
  return berwald_connection(kSpace, make_time_metric(kSpace, P(h)),
                            make_spatial_metric(kSpace, phi));
}

Mat num(std::initializer_list<std::initializer_list<int>> rows) {
  Mat m;
  for (auto r : rows) {
    Vec v;
    for (int x : r) v.emplace_back(x);
    m.push_back(v);
  }
  return m;
}

}  // namespace

TEST(Ricci, FlatBerwaldLiteralZero) {
  GammaConnection flat = berwald("1", false);
  DVector X = random_dvector(kSpace, 1);
  auto res = ricci_residuals(flat, X);
  EXPECT_FALSE(res.empty());
  for (const auto& [name, e] : res) EXPECT_TRUE(e.is_zero()) << name;
}

TEST(Ricci, NamesAndCount) {
  GammaConnection c = oracle::random_connection(kSpace, 1);
  auto res = ricci_residuals(c, random_dvector(kSpace, 2));
  // Per block: identities 1, 3 over k and 2, 4, 5 over (j, k), times the
  // number of free upper indices (1 for hR, n for hM and v).
  EXPECT_EQ(res.size(), (1u + 2u + 2u) * (2u * 2u + 3u * 4u));
  std::map<std::string, int> names;
  for (const auto& [name, e] : res) ++names[name];
  EXPECT_EQ(names.count("ricci.hR.1[k=1]"), 1u);
  EXPECT_EQ(names.count("ricci.hM.2[i=1,j=1,k=2]"), 1u);
  EXPECT_EQ(names.count("ricci.v.5[i=2,j=2,k=1]"), 1u);
  for (const auto& [name, count] : names) EXPECT_EQ(count, 1) << name;
}

TEST(Ricci, RandomConnectionsPass) {
  CheckOptions opt;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    GammaConnection c = oracle::random_connection(kSpace, seed);
    IdentityReport rep = ricci_check(c, random_dvector(kSpace, seed + 7), opt);
    EXPECT_TRUE(rep.all_pass()) << "seed " << seed << " failures " << rep.failures();
  }
}

TEST(Ricci, DetectsWrongCurvature) {
  GammaConnection c = oracle::random_connection(kSpace, 5);
  TorsionSet t = torsion_components(c);
  CurvatureSet cs = curvature_components(c, t);
  cs.Plijk({0, 1, 0, 1}) += Expr(1);
  auto res = ricci_residuals(c, random_dvector(kSpace, 3), t, cs);
  IdentityReport rep = decide(res, kSpace, CheckOptions{});
  EXPECT_FALSE(rep.all_pass());
  const IdentityResult* r = rep.find("ricci.hM.4[i=1,j=1,k=2]");
  ASSERT_NE(r, nullptr);
  EXPECT_FALSE(r->verdict.zero);
}

TEST(Commutator, ScalarFlatIsZero) {
  GammaConnection flat = GammaConnection::zero(kSpace);
  DTensor s = DTensor::scalar(2, P("x1*t^2 + y1_2*sin(x2)"));
  for (FrameOp B : {FrameOp::time(), FrameOp::space(0), FrameOp::vert(1)})
    for (FrameOp C : {FrameOp::space(1), FrameOp::vert(0)})
      EXPECT_TRUE(commutator_residual(s, B, C, flat).is_literal_zero());
}

TEST(Commutator, LiouvilleMatchesDeflectionIdentity) {
  GammaConnection s = berwald("exp(2*t)", true);
  auto defl = deflection_residuals(s);
  std::map<std::string, Expr> by_name(defl.begin(), defl.end());
  DTensor C = liouville(kSpace);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      DTensor r = commutator_residual(C, FrameOp::space(j), FrameOp::vert(k), s);
      for (int i = 0; i < 2; ++i) {
        std::string nm = "deflection.4[i=" + std::to_string(i + 1) + ",j=" +
                         std::to_string(j + 1) + ",k=" + std::to_string(k + 1) + "]";
        ASSERT_TRUE(by_name.count(nm)) << nm;
        EXPECT_TRUE(is_zero(r({i}) - by_name[nm])) << nm;
        EXPECT_TRUE(is_zero(r({i})));
      }
    }
}

TEST(Commutator, MixedRankTwoRandomConnection) {
  GammaConnection c = oracle::random_connection(kSpace, 12);
  TorsionSet t = torsion_components(c);
  CurvatureSet cs = curvature_components(c, t);
  oracle::ExprGen g(4, kSpace.coordinates());
  DTensor T(2, {kUpSpace, kDownVert});
  for (Expr& e : T.components()) e = g.poly(2, 2);
  std::vector<Expr> all;
  for (FrameOp B : {FrameOp::time(), FrameOp::space(0), FrameOp::vert(1)})
    for (FrameOp C : {FrameOp::space(1), FrameOp::vert(0), FrameOp::time()}) {
      DTensor r = commutator_residual(T, B, C, c, t, cs);
      all.insert(all.end(), r.components().begin(), r.components().end());
    }
  ZeroOptions zo;
  for (const ZeroVerdict& v : zero_test_many(all, zo)) EXPECT_TRUE(v.zero) << v.max_residual;
}

TEST(Deflection, BerwaldValues) {
  for (const GammaConnection& c : {berwald("1", false), berwald("exp(2*t)", true)}) {
    DeflectionSet d = deflection_tensors(c);
    EXPECT_TRUE(d.Dbar.is_literal_zero());
    EXPECT_TRUE(d.D.is_literal_zero());
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) EXPECT_EQ(d.d({i, j}), Expr(i == j ? 1 : 0));
  }
}

TEST(Deflection, OneDimensionalCv) {
  JetSpace s1 = JetSpace::standard(1);
  GammaConnection c = GammaConnection::zero(s1);
  c.Cv[0][0][0] = Expr(Rational(5, 2));
  DeflectionSet d = deflection_tensors(c);
  EXPECT_EQ(d.d({0, 0}), parse("1 + 5/2*y1_1", s1.allowed_names()));
}

TEST(Deflection, TwoConstructionsAgree) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    GammaConnection c = oracle::random_connection(kSpace, seed);
    DeflectionSet a = deflection_closed_form(c);
    DeflectionSet b = deflection_from_liouville(c);
    EXPECT_TRUE(dtensor_sub(a.Dbar, b.Dbar).is_literal_zero());
    EXPECT_TRUE(dtensor_sub(a.D, b.D).is_literal_zero());
    EXPECT_TRUE(dtensor_sub(a.d, b.d).is_literal_zero());
    EXPECT_NO_THROW(deflection_tensors(c));
  }
}

TEST(Deflection, IdentitiesFlatSphereRandom) {
  CheckOptions opt;
  for (const auto& [name, e] : deflection_residuals(berwald("1", false)))
    EXPECT_TRUE(e.is_zero()) << name;
  EXPECT_TRUE(deflection_identities_check(berwald("exp(2*t)", true), opt).all_pass());
  for (std::uint64_t seed = 0; seed < 3; ++seed)
    EXPECT_TRUE(deflection_identities_check(oracle::random_connection(kSpace, seed), opt)
                    .all_pass());
}

TEST(Deflection, AgreesWithVerticalRicciBlock) {
  GammaConnection c = oracle::random_connection(kSpace, 17);
  DVector X{Expr(), zero_vec(2), {kSpace.y(0), kSpace.y(1)}};
  std::map<std::string, Expr> ricci;
  for (auto& [nm, e] : ricci_residuals(c, X))
    if (nm.rfind("ricci.v.", 0) == 0) ricci.emplace(nm.substr(8), e);
  auto defl = deflection_residuals(c);
  ASSERT_EQ(defl.size(), ricci.size());
  SampleBox box = kSpace.box();
  for (const auto& [nm, e] : defl) {
    auto it = ricci.find(nm.substr(11));
    ASSERT_NE(it, ricci.end()) << nm;
    for (std::size_t p = 0; p < 8; ++p) {
      Point pt = box.draw(kSpace.coordinates(), 9, p, 0);
      Evaluation a = evaluate_scaled(e, pt);
      Evaluation b = evaluate_scaled(it->second, pt);
      EXPECT_LE(std::abs(a.value - b.value), 1e-12 * (1 + std::max(a.scale, b.scale))) << nm;
    }
  }
}

TEST(ElectromagneticForm, Examples) {
  auto eq = [](const Mat& a, const Mat& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j)
        if (!(a[i][j] == b[i][j])) return false;
    return true;
  };
  EXPECT_TRUE(eq(em_two_form(num({{0, 2}, {-4, 0}})), num({{0, 3}, {-3, 0}})));
  EXPECT_TRUE(eq(em_two_form(num({{1, 7}, {7, 2}})), num({{0, 0}, {0, 0}})));
  EXPECT_TRUE(eq(em_two_form(num({{1, 5}, {1, 2}})), num({{0, 2}, {-2, 0}})));
  EXPECT_THROW(em_two_form(Mat{{Expr(1), Expr(2)}}), ShapeMismatch);
}

TEST(Decide, SortedAndDeterministic) {
  std::vector<std::pair<std::string, Expr>> r = {
      {"b", P("x1 - x1")}, {"a", P("sin(x1)^2 + cos(x1)^2 - 1")}, {"c", P("x1 - x2")}};
  CheckOptions opt;
  IdentityReport rep = decide(r, kSpace, opt);
  ASSERT_EQ(rep.entries.size(), 3u);
  EXPECT_EQ(rep.entries[0].name, "a");
  EXPECT_TRUE(rep.entries[1].verdict.symbolic);
  EXPECT_FALSE(rep.entries[2].verdict.zero);
  EXPECT_EQ(rep.failures(), 1u);
  opt.exec = Exec::Serial;
  IdentityReport ser = decide(r, kSpace, opt);
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_EQ(ser.entries[i].verdict.max_abs, rep.entries[i].verdict.max_abs);
}

TEST(RandomInputs, Seeded) {
  EXPECT_EQ(random_scalar(kSpace, 3), random_scalar(kSpace, 3));
  EXPECT_FALSE(random_scalar(kSpace, 3) == random_scalar(kSpace, 4));
  DVector a = random_dvector(kSpace, 5);
  DVector b = random_dvector(kSpace, 5);
  EXPECT_EQ(a.X1, b.X1);
  EXPECT_EQ(a.Xv, b.Xv);
}
