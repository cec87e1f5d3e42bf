#include "jetgeo/evaluate.hpp"

#include <cmath>

#include "jetgeo/error.hpp"

namespace jetgeo {

double apply_func(Func f, double u) {
  double r = 0.0;
  switch (f) {
    case Func::Sin:
      r = std::sin(u);
      break;
    case Func::Cos:
      r = std::cos(u);
      break;
    case Func::Tan:
      if (std::cos(u) == 0.0) throw EvaluationSingularity("tan pole");
      r = std::tan(u);
      break;
    case Func::Exp:
      r = std::exp(u);
      break;
    case Func::Log:
      if (!(u > 0.0)) throw EvaluationSingularity("log of non-positive value");
      r = std::log(u);
      break;
    case Func::Sqrt:
      if (u < 0.0) throw EvaluationSingularity("sqrt of negative value");
      r = std::sqrt(u);
      break;
    case Func::Sinh:
      r = std::sinh(u);
      break;
    case Func::Cosh:
      r = std::cosh(u);
      break;
  }
  if (!std::isfinite(r)) throw EvaluationSingularity("non-finite function value");
  return r;
}

double int_power(double base, int exp) {
  if (exp < 0) {
    if (base == 0.0) throw EvaluationSingularity("division by zero");
    return 1.0 / int_power(base, -exp);
  }
  double out = 1.0;
  double b = base;
  unsigned e = static_cast<unsigned>(exp);
  while (e > 0) {
    if (e & 1U) out *= b;
    e >>= 1U;
    if (e > 0) b *= b;
  }
  return out;
}

namespace {

Evaluation eval_expr(const Expr& e, const Point& p);

Evaluation eval_atom(const Atom& a, const Point& p) {
  switch (a->kind) {
    case AtomNode::Kind::Variable: {
      auto it = p.find(a->name);
      if (it == p.end()) throw UnboundVariable("no value for '" + a->name + "'");
      return {it->second, std::abs(it->second)};
    }
    case AtomNode::Kind::Call: {
      Evaluation u = eval_expr(a->arg, p);
      double v = apply_func(a->fn, u.value);
      return {v, std::max(u.scale, std::abs(v))};
    }
    case AtomNode::Kind::SumBase:
      return eval_expr(a->arg, p);
  }
  return {};
}

Evaluation eval_expr(const Expr& e, const Point& p) {
  Evaluation out;
  for (const auto& t : e.terms()) {
    double term = t.coeff.to_double();
    for (const auto& f : t.factors) {
      Evaluation b = eval_atom(f.base, p);
      out.scale = std::max(out.scale, b.scale);
      term *= int_power(b.value, f.exp);
    }
    out.scale = std::max(out.scale, std::abs(term));
    out.value += term;
  }
  if (!std::isfinite(out.value)) throw EvaluationSingularity("non-finite value");
  out.scale = std::max(out.scale, std::abs(out.value));
  return out;
}

}  // namespace

Evaluation evaluate_scaled(const Expr& e, const Point& p) { return eval_expr(e, p); }

double evaluate(const Expr& e, const Point& p) { return eval_expr(e, p).value; }

}  // namespace jetgeo
