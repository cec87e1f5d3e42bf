#pragma once

// Metric-level objects: Christoffel symbols of h11(t) and phi_ij(x), the
// canonical nonlinear connection, the Berwald connection and the spatial
// curvature tensor.

#include "jetgeo/arrays.hpp"
#include "jetgeo/jet_space.hpp"

namespace jetgeo {

struct TimeMetric {
  Expr h11;
};

struct SpatialMetric {
  Mat phi;  // phi[i][j], symmetric
};

// Throws ShapeMismatch when h11 depends on anything but t, and SingularMetric
// when it vanishes identically.
TimeMetric make_time_metric(const JetSpace& space, Expr h11);
// Throws ShapeMismatch on a wrong shape, an asymmetric matrix or a dependence
// on anything but x; SingularMetric when the determinant vanishes.
SpatialMetric make_spatial_metric(const JetSpace& space, Mat phi);

// M[i] = M_(1)1^(i), N[i][j] = N_(1)j^(i).
struct NonlinearConnection {
  JetSpace space;
  Vec M;
  Mat N;

  static NonlinearConnection zero(const JetSpace& space);
};

// The nine adapted blocks. Index order:
//   Gbar          Gbar^1_11
//   G[k][i]       G^k_i1
//   Gv[k][i]      G_(1)(i)1^(k)(1)
//   Lbar[j]       Lbar^1_1j
//   L[k][i][j]    L^k_ij
//   Lv[k][i][j]   L_(1)(i)j^(k)(1)
//   Cbar[k]       Cbar^1_1(k)
//   C[k][i][j]    C^k_i(j)
//   Cv[k][i][j]   C_(1)(i)(j)^(k)(1)(1)
struct GammaConnection {
  NonlinearConnection nlc;
  Expr Gbar;
  Mat G, Gv;
  Vec Lbar;
  Arr3 L, Lv;
  Vec Cbar;
  Arr3 C, Cv;

  const JetSpace& space() const noexcept { return nlc.space; }
  int n() const noexcept { return nlc.space.n(); }
  static GammaConnection zero(const JetSpace& space);
};

Expr determinant(const Mat& m);
// Adjugate over determinant. Throws SingularMetric when the determinant is
// the literal 0.
Mat inverse(const Mat& m);

// H^1_11 = h11' / (2 h11).
Expr christoffel_time(const JetSpace& space, const TimeMetric& h);
// gamma[i][j][k] = gamma^i_jk.
Arr3 christoffel_spatial(const JetSpace& space, const SpatialMetric& phi);

NonlinearConnection canonical_nlc(const JetSpace& space, const TimeMetric& h,
                                  const SpatialMetric& phi);
GammaConnection berwald_connection(const JetSpace& space, const TimeMetric& h,
                                   const SpatialMetric& phi);

// r[k][m][i][j] = d_j gamma^k_im - d_i gamma^k_jm + gamma^k_jr gamma^r_im
//               - gamma^k_ir gamma^r_jm.
// With this sign R_(1)ij^(k) = r^k_mij y1_m for the canonical nonlinear
// connection.
Arr4 spatial_riemann(const JetSpace& space, const SpatialMetric& phi);

}  // namespace jetgeo
