#include "jetgeo/geometry.hpp"

#include "jetgeo/error.hpp"

namespace jetgeo {

namespace {

bool depends_only_on(const Expr& e, const std::vector<std::string>& allowed,
                     const JetSpace& space) {
  for (const auto& v : e.free_variables()) {
    bool ok = false;
    for (const auto& a : allowed) ok = ok || a == v;
    for (const auto& p : space.parameters()) ok = ok || p.first == v;
    if (!ok) return false;
  }
  return true;
}

// Laplace expansion along the first remaining row.
Expr minor_det(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.empty()) return Expr(1);
  if (rows.size() == 1) return m[rows[0]][cols[0]];
  Expr det;
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Expr& a = m[rows[0]][cols[c]];
    if (a.is_zero()) continue;
    std::vector<int> sub_cols;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (k != c) sub_cols.push_back(cols[k]);
    Expr term = a * minor_det(m, sub_rows, sub_cols);
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace

TimeMetric make_time_metric(const JetSpace& space, Expr h11) {
  if (!depends_only_on(h11, {space.time_name()}, space))
    throw ShapeMismatch("h11 must depend on " + space.time_name() + " only");
  if (is_zero(h11, ZeroOptions{.box = space.box()}))
    throw SingularMetric("h11 vanishes identically");
  return TimeMetric{std::move(h11)};
}

SpatialMetric make_spatial_metric(const JetSpace& space, Mat phi) {
  const int n = space.n();
  if (static_cast<int>(phi.size()) != n) throw ShapeMismatch("phi must be n x n");
  for (const auto& row : phi)
    if (static_cast<int>(row.size()) != n) throw ShapeMismatch("phi must be n x n");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i < j && !(phi[i][j] == phi[j][i]))
        throw ShapeMismatch("phi is not symmetric at [" + std::to_string(i + 1) + "][" +
                            std::to_string(j + 1) + "]");
      if (!depends_only_on(phi[i][j], space.space_names(), space))
        throw ShapeMismatch("phi must depend on the space coordinates only");
    }
  }
  if (is_zero(determinant(phi), ZeroOptions{.box = space.box()}))
    throw SingularMetric("spatial metric is degenerate");
  return SpatialMetric{std::move(phi)};
}

NonlinearConnection NonlinearConnection::zero(const JetSpace& space) {
  return NonlinearConnection{space, zero_vec(space.n()), zero_mat(space.n())};
}

GammaConnection GammaConnection::zero(const JetSpace& space) {
  const int n = space.n();
  GammaConnection c{NonlinearConnection::zero(space), Expr(), {}, {}, {}, {}, {}, {}, {}, {}};
  c.G = c.Gv = zero_mat(n);
  c.Lbar = c.Cbar = zero_vec(n);
  c.L = c.Lv = c.C = c.Cv = zero_arr3(n);
  return c;
}

Expr determinant(const Mat& m) {
  std::vector<int> idx(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) idx[i] = static_cast<int>(i);
  return minor_det(m, idx, idx);
}

Mat inverse(const Mat& m) {
  const int n = static_cast<int>(m.size());
  Expr det = determinant(m);
  if (det.is_zero()) throw SingularMetric("matrix determinant is 0");
  Expr inv_det = det.pow(-1);
  Mat out = zero_mat(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // (A^-1)[i][j] = cofactor(j, i) / det
      std::vector<int> rows, cols;
      for (int k = 0; k < n; ++k) {
        if (k != j) rows.push_back(k);
        if (k != i) cols.push_back(k);
      }
      Expr cof = minor_det(m, rows, cols);
      if ((i + j) % 2 == 1) cof = -cof;
      out[i][j] = cof * inv_det;
    }
  }
  return out;
}

Expr christoffel_time(const JetSpace& space, const TimeMetric& h) {
  return differentiate(h.h11, space.time_name()) * h.h11.pow(-1) * Expr(Rational(1, 2));
}

Arr3 christoffel_spatial(const JetSpace& space, const SpatialMetric& phi) {
  const int n = space.n();
  Mat inv = inverse(phi.phi);
  // dphi[a][b][c] = d phi_ab / d x^c
  Arr3 dphi = zero_arr3(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) dphi[a][b][c] = differentiate(phi.phi[a][b], space.space_name(c));
  Arr3 g = zero_arr3(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        Expr sum;
        for (int m = 0; m < n; ++m) {
          if (inv[i][m].is_zero()) continue;
          sum += inv[i][m] * (dphi[j][m][k] + dphi[k][m][j] - dphi[j][k][m]);
        }
        g[i][j][k] = sum.scaled(Rational(1, 2));
        g[i][k][j] = g[i][j][k];
      }
    }
  }
  return g;
}

NonlinearConnection canonical_nlc(const JetSpace& space, const TimeMetric& h,
                                  const SpatialMetric& phi) {
  const int n = space.n();
  Expr H = christoffel_time(space, h);
  Arr3 g = christoffel_spatial(space, phi);
  NonlinearConnection nlc = NonlinearConnection::zero(space);
  for (int j = 0; j < n; ++j) {
    nlc.M[j] = -(H * space.y(j));
    for (int i = 0; i < n; ++i) {
      Expr s;
      for (int m = 0; m < n; ++m) s += g[j][i][m] * space.y(m);
      nlc.N[j][i] = s;
    }
  }
  return nlc;
}

GammaConnection berwald_connection(const JetSpace& space, const TimeMetric& h,
                                   const SpatialMetric& phi) {
  const int n = space.n();
  GammaConnection c = GammaConnection::zero(space);
  c.nlc = canonical_nlc(space, h, phi);
  Expr H = christoffel_time(space, h);
  Arr3 g = christoffel_spatial(space, phi);
  c.Gbar = H;
  for (int k = 0; k < n; ++k) c.Gv[k][k] = -H;
  c.L = g;
  c.Lv = g;
  return c;
}

Arr4 spatial_riemann(const JetSpace& space, const SpatialMetric& phi) {
  const int n = space.n();
  Arr3 g = christoffel_spatial(space, phi);
  Arr4 r = zero_arr4(n);
  for (int k = 0; k < n; ++k) {
    for (int m = 0; m < n; ++m) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          Expr v = differentiate(g[k][i][m], space.space_name(j)) -
                   differentiate(g[k][j][m], space.space_name(i));
          for (int s = 0; s < n; ++s) v += g[k][j][s] * g[s][i][m] - g[k][i][s] * g[s][j][m];
          r[k][m][i][j] = v;
          r[k][m][j][i] = -v;
        }
      }
    }
  }
  return r;
}

}  // namespace jetgeo
