#pragma once

// Torsion and curvature straight from their definitions
//   T(X, Y) = nabla_X Y - nabla_Y X - [X, Y]
//   R(X, Y) Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
// on the adapted frame e_0 = d/dt - M d/dy, e_(1+i) = d/dx^i - N_i d/dy,
// e_(1+n+i) = d/dy_i. Vector fields are arrays of adapted components; Lie
// brackets are taken in coordinate components. Nothing here calls the
// production frame, bracket or torsion code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "jetgeo/curvtor.hpp"
#include "jetgeo/evaluate.hpp"
#include "jetgeo/frames.hpp"
#include "jetgeo/geometry.hpp"
#include "jetgeo/identities.hpp"

namespace jetgeo::oracle {

using Field = std::vector<Expr>;

class DefinitionOracle {
 public:
  explicit DefinitionOracle(const GammaConnection& c) : c_(c), n_(c.n()), dim_(2 * c.n() + 1) {}

  int dim() const noexcept { return dim_; }

  int index(FrameOp op) const {
    switch (op.kind) {
      case Kind::Time: return 0;
      case Kind::Space: return 1 + op.index;
      case Kind::Vert: return 1 + n_ + op.index;
    }
    return 0;
  }
  FrameOp op(int A) const {
    if (A == 0) return FrameOp::time();
    if (A <= n_) return FrameOp::space(A - 1);
    return FrameOp::vert(A - 1 - n_);
  }

  Field frame(int A) const {
    Field f(static_cast<std::size_t>(dim_));
    f[static_cast<std::size_t>(A)] = Expr(1);
    return f;
  }

  // Coordinate components (t, x^i, y_i) of an adapted field.
  Field to_coords(const Field& X) const {
    Field w(static_cast<std::size_t>(dim_));
    w[0] = X[0];
    for (int i = 0; i < n_; ++i) w[1 + i] = X[1 + i];
    for (int r = 0; r < n_; ++r) {
      Expr v = X[1 + n_ + r] - X[0] * c_.nlc.M[r];
      for (int i = 0; i < n_; ++i) v -= X[1 + i] * c_.nlc.N[r][i];
      w[1 + n_ + r] = v;
    }
    return w;
  }
  Field from_coords(const Field& W) const {
    Field X(static_cast<std::size_t>(dim_));
    X[0] = W[0];
    for (int i = 0; i < n_; ++i) X[1 + i] = W[1 + i];
    for (int r = 0; r < n_; ++r) {
      Expr v = W[1 + n_ + r] + W[0] * c_.nlc.M[r];
      for (int i = 0; i < n_; ++i) v += W[1 + i] * c_.nlc.N[r][i];
      X[1 + n_ + r] = v;
    }
    return X;
  }

  // W(f) for coordinate components W.
  Expr derive_coords(const Field& W, const Expr& f) const {
    const JetSpace& sp = c_.space();
    Expr out = W[0] * differentiate(f, sp.time_name());
    for (int i = 0; i < n_; ++i) {
      out += W[1 + i] * differentiate(f, sp.space_name(i));
      out += W[1 + n_ + i] * differentiate(f, sp.fiber_name(i));
    }
    return out;
  }
  Expr derive(const Field& X, const Expr& f) const { return derive_coords(to_coords(X), f); }

  Field bracket(const Field& X, const Field& Y) const {
    Field a = to_coords(X);
    Field b = to_coords(Y);
    Field w(static_cast<std::size_t>(dim_));
    for (int m = 0; m < dim_; ++m) w[m] = derive_coords(a, b[m]) - derive_coords(b, a[m]);
    return from_coords(w);
  }

  // Gamma^F_AB with nabla_(e_B) e_A = Gamma^F_AB e_F.
  Expr gamma(int F, int A, int B) const {
    FrameOp a = op(A), b = op(B), f = op(F);
    if (a.kind != f.kind) return Expr();
    switch (a.kind) {
      case Kind::Time:
        switch (b.kind) {
          case Kind::Time: return c_.Gbar;
          case Kind::Space: return c_.Lbar[b.index];
          case Kind::Vert: return c_.Cbar[b.index];
        }
        break;
      case Kind::Space:
        switch (b.kind) {
          case Kind::Time: return c_.G[f.index][a.index];
          case Kind::Space: return c_.L[f.index][a.index][b.index];
          case Kind::Vert: return c_.C[f.index][a.index][b.index];
        }
        break;
      case Kind::Vert:
        switch (b.kind) {
          case Kind::Time: return c_.Gv[f.index][a.index];
          case Kind::Space: return c_.Lv[f.index][a.index][b.index];
          case Kind::Vert: return c_.Cv[f.index][a.index][b.index];
        }
        break;
    }
    return Expr();
  }

  Field nabla(const Field& X, const Field& Y) const {
    Field out(static_cast<std::size_t>(dim_));
    for (int F = 0; F < dim_; ++F) {
      Expr v = derive(X, Y[F]);
      for (int B = 0; B < dim_; ++B) {
        if (X[B].is_zero()) continue;
        for (int A = 0; A < dim_; ++A) {
          if (Y[A].is_zero()) continue;
          Expr g = gamma(F, A, B);
          if (!g.is_zero()) v += X[B] * Y[A] * g;
        }
      }
      out[F] = v;
    }
    return out;
  }

  Field torsion(const Field& X, const Field& Y) const {
    Field a = nabla(X, Y);
    Field b = nabla(Y, X);
    Field br = bracket(X, Y);
    for (int F = 0; F < dim_; ++F) a[F] = a[F] - b[F] - br[F];
    return a;
  }

  Field curvature(const Field& X, const Field& Y, const Field& Z) const {
    Field a = nabla(X, nabla(Y, Z));
    Field b = nabla(Y, nabla(X, Z));
    Field c = nabla(bracket(X, Y), Z);
    for (int F = 0; F < dim_; ++F) a[F] = a[F] - b[F] - c[F];
    return a;
  }

 private:
  GammaConnection c_;
  int n_;
  int dim_;
};

struct OracleComparison {
  double max_residual = 0.0;  // max |a - b| / (1 + |a| + |b|)
  int compared = 0;
};

// Compares the formula outputs with the definitions at `points` points of the
// default box: torsion for every ordered frame pair, curvature for every
// triple. Off-block curvature components must vanish.
inline OracleComparison compare_definitions(const GammaConnection& conn, const TorsionSet& tor,
                                            const CurvatureSet& cur, int points,
                                            std::uint64_t seed) {
  DefinitionOracle o(conn);
  const int dim = o.dim();
  std::vector<std::pair<Expr, Expr>> pairs;  // (definition, formula)
  for (int B = 0; B < dim; ++B)
    for (int C = 0; C < dim; ++C) {
      Field T = o.torsion(o.frame(C), o.frame(B));
      for (int F = 0; F < dim; ++F)
        pairs.emplace_back(T[F], torsion_coefficient(tor, o.op(F), o.op(B), o.op(C)));
      for (int A = 0; A < dim; ++A) {
        Field R = o.curvature(o.frame(C), o.frame(B), o.frame(A));
        const FrameOp fa = o.op(A);
        for (int F = 0; F < dim; ++F) {
          const FrameOp ff = o.op(F);
          Expr formula = ff.kind == fa.kind
                             ? curvature_coefficient(cur, fa.kind, ff.index, fa.index, o.op(B),
                                                     o.op(C))
                             : Expr();
          pairs.emplace_back(R[F], formula);
        }
      }
    }
  SampleBox box = conn.space().box();
  std::vector<std::string> vars = conn.space().coordinates();
  OracleComparison out;
  for (int p = 0; p < points; ++p) {
    Point pt = box.draw(vars, seed, static_cast<std::size_t>(p), 0);
    for (const auto& [d, f] : pairs) {
      double a = evaluate(d, pt);
      double b = evaluate(f, pt);
      out.max_residual =
          std::max(out.max_residual, std::abs(a - b) / (1 + std::abs(a) + std::abs(b)));
      ++out.compared;
    }
  }
  return out;
}

}  // namespace jetgeo::oracle
