#pragma once

// Seeded random geometric inputs: polynomial nonlinear and Gamma-linear
// connections, and metric pairs that stay nondegenerate on the sample box.

#include <cstdint>
#include <vector>

#include "jetgeo/geometry.hpp"
#include "random_expr.hpp"

namespace jetgeo::oracle {

inline std::vector<std::string> jet_vars(const JetSpace& sp) { return sp.coordinates(); }

// Polynomial with integer coefficients, total degree <= degree, in all jet
// coordinates of sp.
inline Expr random_poly(ExprGen& g, int degree = 2, int terms = 3) {
  return g.poly(degree, terms);
}

inline NonlinearConnection random_nlc(const JetSpace& sp, std::uint64_t seed, int degree = 2) {
  ExprGen g(seed * 7919 + 1, jet_vars(sp));
  NonlinearConnection nlc = NonlinearConnection::zero(sp);
  const int n = sp.n();
  for (int i = 0; i < n; ++i) {
    nlc.M[i] = random_poly(g, degree);
    for (int j = 0; j < n; ++j) nlc.N[i][j] = random_poly(g, degree);
  }
  return nlc;
}

// Every block is a random polynomial of the given degree.
inline GammaConnection random_connection(const JetSpace& sp, std::uint64_t seed,
                                         int degree = 2) {
  GammaConnection c = GammaConnection::zero(sp);
  c.nlc = random_nlc(sp, seed, degree);
  ExprGen g(seed * 104729 + 3, jet_vars(sp));
  const int n = sp.n();
  auto p = [&] { return random_poly(g, degree, 2); };
  c.Gbar = p();
  for (int k = 0; k < n; ++k) {
    c.Cbar[k] = p();
    c.Lbar[k] = p();
    for (int i = 0; i < n; ++i) {
      c.G[k][i] = p();
      c.Gv[k][i] = p();
      for (int j = 0; j < n; ++j) {
        c.L[k][i][j] = p();
        c.Lv[k][i][j] = p();
        c.C[k][i][j] = p();
        c.Cv[k][i][j] = p();
      }
    }
  }
  return c;
}

struct MetricPair {
  TimeMetric h;
  SpatialMetric phi;
};

// h11 = a + b t + c t^2 with a >= 1, b, c >= 0, positive for t > 0.
// phi is positive definite on x in [0.3, 1.2]: diagonal entries >= 2 plus
// squares, off-diagonal entries bounded by 1/2.
inline MetricPair random_metric(const JetSpace& sp, std::uint64_t seed, bool diagonal = false) {
  ExprGen g(seed * 31337 + 5, {"unused"});
  const Expr t = sp.t();
  Expr h = Expr(1 + static_cast<int>(g.pick(3))) + t * Expr(static_cast<int>(g.pick(3))) +
           t.pow(2) * Expr(static_cast<int>(g.pick(3)));
  const int n = sp.n();
  Mat phi = zero_mat(n);
  for (int i = 0; i < n; ++i) {
    const Expr& xo = sp.x((i + 1) % n);
    Expr d(2 + static_cast<int>(g.pick(2)));
    switch (g.pick(3)) {
      case 0: d += xo.pow(2); break;
      case 1: d += fn::sin(xo).pow(2); break;
      default: d += xo * Expr(static_cast<int>(g.pick(2)) + 1); break;
    }
    phi[i][i] = d;
  }
  if (!diagonal) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Expr o = g.pick(2) == 0 ? fn::sin(sp.x(i)) : sp.x(i) * sp.x(j);
        o = o.scaled(Rational(1, 4 * (n - 1)));
        phi[i][j] = o;
        phi[j][i] = o;
      }
  }
  return {make_time_metric(sp, h), make_spatial_metric(sp, phi)};
}

}  // namespace jetgeo::oracle
