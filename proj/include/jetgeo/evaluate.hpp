#pragma once

#include <functional>
#include <map>
#include <string>

#include "jetgeo/expr.hpp"

namespace jetgeo {

using Point = std::map<std::string, double, std::less<>>;

struct Evaluation {
  double value = 0.0;
  // Largest magnitude of any intermediate value (atoms, terms, sums).
  double scale = 0.0;
};

// Reference tree-walking evaluator. Throws UnboundVariable when a free
// variable is missing from p, EvaluationSingularity on division by zero,
// log of a non-positive value, sqrt of a negative value or non-finite results.
double evaluate(const Expr& e, const Point& p);
Evaluation evaluate_scaled(const Expr& e, const Point& p);

// Scalar kernels shared by the reference and the compiled evaluators.
double apply_func(Func f, double u);
double int_power(double base, int exp);

}  // namespace jetgeo
