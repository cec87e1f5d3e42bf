#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "jetgeo/error.hpp"
#include "jetgeo/evaluate.hpp"
#include "jetgeo/expr.hpp"
#include "jetgeo/parse.hpp"
#include "jetgeo/zero_test.hpp"
#include "random_expr.hpp"

using namespace jetgeo;

namespace {

const std::set<std::string, std::less<>> kVars = {"t", "x1", "x2", "y1_1", "y1_2"};

Expr P(const char* s) { return parse(s, kVars); }
Expr V(const char* s) { return Expr::variable(s); }

}  // namespace

TEST(Parse, GrammarExamples) {
  Expr e = P("x1^2 + t");
  EXPECT_EQ(e, V("x1").pow(2) + V("t"));
  EXPECT_EQ(e.kind(), NodeKind::Sum);

  Expr s = P("sin(x1)^2");
  EXPECT_EQ(s, fn::sin(V("x1")).pow(2));
  EXPECT_EQ(s.kind(), NodeKind::Power);

  EXPECT_THROW(P("2*"), MalformedExpression);
  EXPECT_THROW(P(""), MalformedExpression);
  EXPECT_THROW(P("(x1"), MalformedExpression);
  EXPECT_THROW(P("x1 x2"), MalformedExpression);
  EXPECT_THROW(P("z + 1"), UnknownVariable);
  EXPECT_THROW(P("foo(x1)"), UnknownVariable);
}

TEST(Parse, PrecedenceAndWhitespace) {
  EXPECT_EQ(P(" x1 *  x2 ^2 "), V("x1") * V("x2").pow(2));
  EXPECT_EQ(P("-x1^2"), -(V("x1").pow(2)));
  EXPECT_EQ(P("1/2*x1"), V("x1").scaled(Rational(1, 2)));
  EXPECT_EQ(P("0.25*t"), V("t").scaled(Rational(1, 4)));
  EXPECT_EQ(P("x1^-2"), V("x1").pow(-2));
  EXPECT_EQ(P("t - x1 - x2"), V("t") - V("x1") - V("x2"));
  EXPECT_THROW(P("1/0"), MalformedExpression);
}

TEST(Canonical, FlatteningAndFolding) {
  EXPECT_EQ(P("x1 + t"), P("t + x1"));
  EXPECT_EQ(P("x1*t*2"), P("2*t*x1"));
  EXPECT_EQ(P("(x1 + t)^2"), P("x1^2 + 2*x1*t + t^2"));
  EXPECT_EQ(P("x1/x1"), Expr(1));
  EXPECT_EQ(P("1/(2*x1 + 2*t)"), P("1/2/(x1 + t)"));
  EXPECT_EQ(P("1/(-x1 - t)"), P("-1/(t + x1)"));
  EXPECT_TRUE(P("x1 - x1").is_zero());
  EXPECT_TRUE(P("cos(0) - 1").is_zero());
}

TEST(Differentiate, Examples) {
  EXPECT_EQ(differentiate(P("x1^2 * t"), "x1"), P("2*x1*t"));
  EXPECT_EQ(differentiate(P("exp(2*t)"), "t"), P("2*exp(2*t)"));
  EXPECT_TRUE(differentiate(P("sin(x1)^2"), "x2").is_zero());
  EXPECT_EQ(differentiate(P("log(x1)"), "x1"), P("1/x1"));
  EXPECT_EQ(differentiate(P("1/(x1 + t)"), "t"), P("-1/(x1 + t)^2"));
  EXPECT_EQ(differentiate(P("sqrt(x1)"), "x1"), P("1/2/sqrt(x1)"));
  EXPECT_EQ(differentiate(P("tan(x1)"), "x1"), P("1 + tan(x1)^2"));
  EXPECT_EQ(differentiate(P("cosh(t)"), "t"), P("sinh(t)"));
}

TEST(Evaluate, Examples) {
  EXPECT_DOUBLE_EQ(evaluate(P("exp(2*t)"), {{"t", 0.0}}), 1.0);
  EXPECT_NEAR(evaluate(P("sin(x1)^2"), {{"x1", std::numbers::pi / 2}}), 1.0, 1e-12);
  EXPECT_THROW(evaluate(P("1/t"), {{"t", 0.0}}), EvaluationSingularity);
  EXPECT_THROW(evaluate(P("log(t)"), {{"t", -1.0}}), EvaluationSingularity);
  EXPECT_THROW(evaluate(P("sqrt(t)"), {{"t", -1.0}}), EvaluationSingularity);
  EXPECT_THROW(evaluate(P("t + x1"), {{"t", 1.0}}), UnboundVariable);
}

TEST(Simplify, Examples) {
  EXPECT_EQ(simplify(P("0*x1 + y1_1")), V("y1_1"));
  EXPECT_EQ(simplify(P("1*sin(x1)")), fn::sin(V("x1")));
  EXPECT_TRUE(simplify(P("x1 - x1")).is_zero());
}

TEST(ZeroTest, Examples) {
  EXPECT_TRUE(is_zero(P("sin(x1)^2 + cos(x1)^2 - 1"), 32, 0));
  EXPECT_FALSE(is_zero(P("x1 - x2"), 32, 0));
  EXPECT_TRUE(is_zero(Expr(0), 1, 0));

  ZeroVerdict lit = zero_test(Expr(0), ZeroOptions{});
  EXPECT_TRUE(lit.symbolic);
  ZeroVerdict trig = zero_test(P("sin(x1)^2 + cos(x1)^2 - 1"), ZeroOptions{});
  EXPECT_TRUE(trig.zero);
  EXPECT_FALSE(trig.symbolic);
  EXPECT_EQ(trig.samples, 32);
  EXPECT_LE(trig.max_residual, 1e-9);
}

TEST(ZeroTest, ResamplesAroundSingularities) {
  // log(x1 - 0.75) is singular on about half the box; resampling must find
  // regular points without changing the verdict.
  Expr e = P("log(x1 - 3/4) - log(x1 - 3/4)");
  EXPECT_TRUE(e.is_zero());
  Expr g = P("exp(log(4*x1 - 3)) - (4*x1 - 3)");
  EXPECT_TRUE(is_zero(g, 16, 3));

  // Singular everywhere: the test gives up.
  Expr bad = P("log(-1 - x1^2)");
  EXPECT_THROW(is_zero(bad, 4, 0), SampleExhausted);
}

TEST(ZeroTest, DeterministicPerSeed) {
  ZeroOptions a;
  a.seed = 7;
  ZeroOptions b = a;
  b.exec = Exec::Serial;
  Expr e = P("x1*sin(t) - y1_1");
  auto va = zero_test(e, a);
  auto vb = zero_test(e, b);
  EXPECT_EQ(va.max_abs, vb.max_abs);
  EXPECT_EQ(va.zero, vb.zero);
}

// ---------------------------------------------------------------------------
// Properties

namespace {
const std::vector<std::string> kVarList = {"t", "x1", "x2", "y1_1", "y1_2"};

Point box_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> h(0.3, 1.2);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  return {{"t", h(rng)}, {"x1", h(rng)}, {"x2", h(rng)}, {"y1_1", v(rng)}, {"y1_2", v(rng)}};
}
}  // namespace

TEST(Property, RenderParseRoundTrip) {
  oracle::ExprGen gen(11, kVarList);
  for (int i = 0; i < 200; ++i) {
    Expr e = gen.expr(4);
    Expr back = P(render(e).c_str());
    ASSERT_EQ(back, e) << render(e);
  }
}

TEST(Property, DerivativeMatchesCentralDifference) {
  oracle::ExprGen gen(5, kVarList);
  std::mt19937_64 rng(99);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    Expr e = gen.expr(4);
    const std::string& v = kVarList[gen.pick(5)];
    Point p = box_point(rng);
    Point lo = p;
    Point hi = p;
    lo[v] -= h;
    hi[v] += h;
    double fd = (evaluate(e, hi) - evaluate(e, lo)) / (2 * h);
    double exact = evaluate(differentiate(e, v), p);
    ASSERT_NEAR(exact, fd, 1e-5 * (1 + std::abs(exact))) << render(e) << " d/d" << v;
  }
}

TEST(Property, DerivativeIsLinear) {
  oracle::ExprGen gen(17, kVarList);
  for (int i = 0; i < 50; ++i) {
    Expr a = gen.expr(3);
    Expr b = gen.expr(3);
    Rational ca(static_cast<int>(gen.pick(7)) - 3, 1 + static_cast<int>(gen.pick(3)));
    Rational cb(static_cast<int>(gen.pick(7)) - 3, 1 + static_cast<int>(gen.pick(3)));
    const std::string& v = kVarList[gen.pick(5)];
    Expr lhs = simplify(differentiate(a.scaled(ca) + b.scaled(cb), v));
    Expr rhs = simplify(differentiate(a, v).scaled(ca) + differentiate(b, v).scaled(cb));
    ASSERT_EQ(lhs, rhs);
  }
}

TEST(Property, LeibnizRule) {
  oracle::ExprGen gen(23, kVarList);
  for (int i = 0; i < 100; ++i) {
    Expr a = gen.expr(5);
    Expr b = gen.expr(5);
    const std::string& v = kVarList[gen.pick(5)];
    Expr diff = differentiate(a * b, v) - (differentiate(a, v) * b + a * differentiate(b, v));
    ASSERT_TRUE(is_zero(diff, 32, static_cast<std::uint64_t>(i))) << render(a) << " | " << render(b);
  }
}

TEST(Property, SimplifyIdempotentAndValuePreserving) {
  oracle::ExprGen gen(31, kVarList);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Expr e = gen.expr(4);
    Expr s = simplify(e);
    ASSERT_EQ(simplify(s), s);
    Point p = box_point(rng);
    double a = evaluate(e, p);
    double b = evaluate(s, p);
    ASSERT_NEAR(a, b, 1e-12 * (1 + std::abs(a)));
  }
}

TEST(Substitute, ReplacesVariables) {
  Expr e = P("x1^2 + sin(x1*t)");
  Substitution s{{{"x1", P("2*x2")}}};
  EXPECT_EQ(substitute(e, s), P("4*x2^2 + sin(2*x2*t)"));
  EXPECT_EQ(substitute(P("1/(x1 + t)"), Substitution{{{"x1", P("-t + x2")}}}), P("1/x2"));
}

TEST(Rational, ArithmeticAndOverflow) {
  EXPECT_EQ(Rational(6, -4), Rational(-3, 2));
  EXPECT_EQ((Rational(1, 3) + Rational(1, 6)).str(), "1/2");
  EXPECT_EQ(Rational(2, 3).pow(-2), Rational(9, 4));
  EXPECT_THROW(Rational(1, 0), EvaluationSingularity);
  Rational big(std::int64_t{1} << 62);
  EXPECT_THROW(big * big, ArithmeticOverflow);
}
