#include "jetgeo/transform.hpp"

#include <algorithm>
#include <cmath>

#include "jetgeo/error.hpp"
#include "jetgeo/evaluate.hpp"

namespace jetgeo {

namespace {

constexpr int kValidationSamples = 32;
constexpr double kValidationTol = 1e-9;

bool depends_only_on(const Expr& e, const std::set<std::string, std::less<>>& allowed) {
  for (const auto& v : e.free_variables())
    if (allowed.find(v) == allowed.end()) return false;
  return true;
}

std::vector<std::string> sample_vars(const JetSpace& s) {
  std::vector<std::string> v = s.coordinates();
  for (const auto& [k, _] : s.parameters()) v.push_back(k);
  return v;
}

Expr inv(const Expr& e) { return e.pow(-1); }

}  // namespace

CoordChange change_of_coords(const JetSpace& space, Expr t_new, Vec x_new, Expr t_old,
                             Vec x_old) {
  const int n = space.n();
  if (static_cast<int>(x_new.size()) != n || static_cast<int>(x_old.size()) != n)
    throw ShapeMismatch("coordinate change needs " + std::to_string(n) + " spatial maps");

  std::set<std::string, std::less<>> time_ok{space.time_name()};
  std::set<std::string, std::less<>> space_ok(space.space_names().begin(),
                                               space.space_names().end());
  for (const auto& [k, _] : space.parameters()) {
    time_ok.insert(k);
    space_ok.insert(k);
  }
  if (!depends_only_on(t_new, time_ok) || !depends_only_on(t_old, time_ok))
    throw NotProductChange("the time map may depend on " + space.time_name() + " only");
  for (int i = 0; i < n; ++i)
    if (!depends_only_on(x_new[i], space_ok) || !depends_only_on(x_old[i], space_ok))
      throw NotProductChange("spatial map " + std::to_string(i + 1) +
                             " may depend on the spatial coordinates only");

  CoordChange ch(space);
  ch.t_new_ = std::move(t_new);
  ch.x_new_ = std::move(x_new);
  ch.t_old_ = std::move(t_old);
  ch.x_old_ = std::move(x_old);

  const std::string& tn = space.time_name();
  ch.dt_ = differentiate(ch.t_new_, tn);
  ch.ddt_ = differentiate(ch.dt_, tn);
  ch.J_ = zero_mat(n);
  ch.Jinv_ = zero_mat(n);
  ch.hess_ = zero_arr3(n);
  Substitution x_to_new;
  for (int j = 0; j < n; ++j) x_to_new.map.emplace_back(space.space_name(j), ch.x_new_[j]);
  Mat dxold = zero_mat(n);  // dx_old^i/dx~^j in new coordinates
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ch.J_[i][j] = differentiate(ch.x_new_[i], space.space_name(j));
      dxold[i][j] = differentiate(ch.x_old_[i], space.space_name(j));
      ch.Jinv_[i][j] = substitute(dxold[i][j], x_to_new);
      for (int k = 0; k < n; ++k)
        ch.hess_[i][j][k] = differentiate(ch.J_[i][j], space.space_name(k));
    }
  if (ch.dt_.is_zero()) throw JacobianSingular("dt~/dt vanishes identically");
  const Expr det = determinant(ch.J_);
  if (det.is_zero()) throw JacobianSingular("the spatial Jacobian is singular");

  ch.y_new_ = zero_vec(n);
  for (int k = 0; k < n; ++k) {
    Expr s;
    for (int j = 0; j < n; ++j) s += ch.J_[k][j] * space.y(j);
    ch.y_new_[k] = s * inv(ch.dt_);
  }

  // Old coordinates as functions of the new ones.
  Expr dt_new = substitute(ch.dt_, Substitution{{{tn, ch.t_old_}}});
  ch.to_new_.map.emplace_back(tn, ch.t_old_);
  for (int i = 0; i < n; ++i) ch.to_new_.map.emplace_back(space.space_name(i), ch.x_old_[i]);
  for (int i = 0; i < n; ++i) {
    Expr y;
    for (int j = 0; j < n; ++j) y += dxold[i][j] * space.y(j);
    ch.to_new_.map.emplace_back(space.fiber_name(i), y * dt_new);
  }

  // Numeric validation on the old box: Jacobian signs over all samples first,
  // then the inverse round trip.
  const SampleBox box = space.box();
  const std::vector<std::string> vars = sample_vars(space);
  struct Sample {
    Point p, q;
    double dt, det;
    std::vector<double> jm, jim;
  };
  std::vector<Sample> samples;
  for (int s = 0; s < kValidationSamples; ++s) {
    bool done = false;
    for (int attempt = 0; attempt <= kMaxResamples && !done; ++attempt) {
      Sample sm;
      sm.p = box.draw(vars, 0x5eedULL, static_cast<std::size_t>(s), attempt);
      sm.jm.resize(static_cast<std::size_t>(n * n));
      sm.jim.resize(sm.jm.size());
      try {
        sm.dt = evaluate(ch.dt_, sm.p);
        sm.det = evaluate(det, sm.p);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) sm.jm[i * n + j] = evaluate(ch.J_[i][j], sm.p);
      } catch (const EvaluationSingularity&) {
        continue;
      }
      done = true;
      samples.push_back(std::move(sm));
    }
    if (!done) throw SampleExhausted("no regular sample point for the coordinate change");
  }

  int sign_dt = 0;
  int sign_det = 0;
  auto check_sign = [](double v, int& sign, const char* what) {
    if (!(std::abs(v) > kValidationTol))
      throw JacobianSingular(std::string(what) + " vanishes on the sample box");
    int sg = v > 0 ? 1 : -1;
    if (sign != 0 && sg != sign)
      throw JacobianSingular(std::string(what) + " changes sign on the sample box");
    sign = sg;
  };
  for (const Sample& sm : samples) {
    check_sign(sm.dt, sign_dt, "dt~/dt");
    check_sign(sm.det, sign_det, "det(dx~/dx)");
  }

  auto close = [](double a, double b) {
    return std::abs(a - b) <= kValidationTol * (1 + std::abs(b));
  };
  for (Sample& sm : samples) {
    try {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sm.jim[i * n + j] = evaluate(ch.Jinv_[i][j], sm.p);
      sm.q = ch.map_point(sm.p);
      if (!close(evaluate(ch.t_old_, sm.q), sm.p.at(tn)))
        throw InverseMismatch("t_old is not the inverse of t_new");
      for (int i = 0; i < n; ++i)
        if (!close(evaluate(ch.x_old_[i], sm.q), sm.p.at(space.space_name(i))))
          throw InverseMismatch("x_old[" + std::to_string(i + 1) +
                                "] is not the inverse of x_new");
    } catch (const EvaluationSingularity&) {
      throw InverseMismatch("the inverse maps are singular at a mapped sample point");
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0;
        for (int k = 0; k < n; ++k) acc += sm.jm[i * n + k] * sm.jim[k * n + j];
        if (!close(acc, i == j ? 1.0 : 0.0))
          throw InverseMismatch("J * Jinv differs from the identity");
      }
  }
  return ch;
}

Expr CoordChange::to_new(const Expr& e) const { return substitute(e, to_new_); }

Point CoordChange::map_point(const Point& p) const {
  Point q = p;
  const int n = space_.n();
  q[space_.time_name()] = evaluate(t_new_, p);
  for (int i = 0; i < n; ++i) {
    q[space_.space_name(i)] = evaluate(x_new_[i], p);
    q[space_.fiber_name(i)] = evaluate(y_new_[i], p);
  }
  return q;
}

TimeMetric transform_time_metric(const TimeMetric& h, const CoordChange& ch) {
  return TimeMetric{ch.to_new(h.h11 * inv(ch.dt()).pow(2))};
}

SpatialMetric transform_spatial_metric(const SpatialMetric& phi, const CoordChange& ch) {
  const int n = ch.space().n();
  Mat out = zero_mat(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      Expr s;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += ch.Jinv()[i][p] * phi.phi[i][j] * ch.Jinv()[j][q];
      out[p][q] = ch.to_new(s);
    }
  return SpatialMetric{std::move(out)};
}

NonlinearConnection transform_nlc(const NonlinearConnection& nlc, const CoordChange& ch) {
  const JetSpace& sp = ch.space();
  const int n = sp.n();
  const Expr rdt = inv(ch.dt());
  const Mat& J = ch.J();
  const Mat& Ji = ch.Jinv();
  NonlinearConnection out = NonlinearConnection::zero(sp);
  for (int k = 0; k < n; ++k) {
    const Expr& yk = ch.fiber_new()[k];
    Expr m = -(rdt * differentiate(yk, sp.time_name()));
    for (int j = 0; j < n; ++j) m += nlc.M[j] * rdt.pow(2) * J[k][j];
    out.M[k] = ch.to_new(m);
    for (int l = 0; l < n; ++l) {
      Expr s;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) s += nlc.N[j][i] * rdt * Ji[i][l] * J[k][j];
        s -= Ji[i][l] * differentiate(yk, sp.space_name(i));
      }
      out.N[k][l] = ch.to_new(s);
    }
  }
  return out;
}

GammaConnection transform_connection(const GammaConnection& conn, const CoordChange& ch) {
  const JetSpace& sp = ch.space();
  const int n = sp.n();
  const Expr& tp = ch.dt();
  const Expr rdt = inv(tp);
  const Mat& J = ch.J();
  const Mat& Ji = ch.Jinv();
  const Arr3& H = ch.hess();
  GammaConnection out = GammaConnection::zero(sp);
  out.nlc = transform_nlc(conn.nlc, ch);
  out.Gbar = ch.to_new(conn.Gbar * rdt - ch.ddt() * rdt.pow(2));

  // mixed(A)[r][j] = (1/tp) J^r_k A^k_i Jinv^i_j
  auto mixed2 = [&](const Mat& A, const Expr& scale) {
    Mat o = zero_mat(n);
    for (int r = 0; r < n; ++r)
      for (int j = 0; j < n; ++j) {
        Expr s;
        for (int k = 0; k < n; ++k)
          for (int i = 0; i < n; ++i) s += J[r][k] * A[k][i] * Ji[i][j];
        o[r][j] = ch.to_new(s * scale);
      }
    return o;
  };
  auto mixed3 = [&](const Arr3& A, const Expr& scale) {
    Arr3 o = zero_arr3(n);
    for (int s = 0; s < n; ++s)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          Expr acc;
          for (int r = 0; r < n; ++r)
            for (int i = 0; i < n; ++i)
              for (int j = 0; j < n; ++j) {
                if (A[r][i][j].is_zero()) continue;
                acc += J[s][r] * A[r][i][j] * Ji[i][p] * Ji[j][q];
              }
          o[s][p][q] = ch.to_new(acc * scale);
        }
    return o;
  };
  // A - Jinv d2x~ for the inhomogeneous horizontal blocks.
  auto shifted = [&](const Arr3& A) {
    Arr3 o = A;
    for (int r = 0; r < n; ++r)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int m = 0; m < n; ++m) o[r][i][j] -= Ji[r][m] * H[m][i][j];
    return o;
  };

  out.G = mixed2(conn.G, rdt);
  Mat gv = conn.Gv;
  for (int k = 0; k < n; ++k) gv[k][k] += ch.ddt() * rdt;
  out.Gv = mixed2(gv, rdt);

  for (int l = 0; l < n; ++l) {
    Expr lb, cb;
    for (int j = 0; j < n; ++j) {
      lb += conn.Lbar[j] * Ji[j][l];
      cb += conn.Cbar[j] * Ji[j][l];
    }
    out.Lbar[l] = ch.to_new(lb);
    out.Cbar[l] = ch.to_new(cb * tp);
  }
  out.L = mixed3(shifted(conn.L), Expr(1));
  out.Lv = mixed3(shifted(conn.Lv), Expr(1));
  out.C = mixed3(conn.C, tp);
  out.Cv = mixed3(conn.Cv, tp);
  return out;
}

DTensor transform_dtensor(const DTensor& T, const CoordChange& ch) {
  const int n = T.n();
  const Expr rdt = inv(ch.dt());
  const Mat& J = ch.J();
  const Mat& Ji = ch.Jinv();
  // factor(slot, new index a, old index b)
  auto factor = [&](IndexSlot s, int a, int b) -> Expr {
    const bool up = s.variance == Variance::Up;
    switch (s.kind) {
      case Kind::Time: return up ? ch.dt() : rdt;
      case Kind::Space: return up ? J[a][b] : Ji[b][a];
      case Kind::Vert: return up ? J[a][b] * rdt : Ji[b][a] * ch.dt();
    }
    return Expr();
  };
  DTensor cur = T;
  const Signature& sig = T.signature();
  for (std::size_t axis = 0; axis < sig.size(); ++axis) {
    DTensor next(n, sig);
    const int ext = T.extent(axis);
    for (std::size_t f = 0; f < next.size(); ++f) {
      std::vector<int> I = next.multi_index(f);
      const int a = I[axis];
      Expr acc;
      for (int b = 0; b < ext; ++b) {
        I[axis] = b;
        const Expr& c = cur.at(I);
        if (!c.is_zero()) acc += factor(sig[axis], a, b) * c;
      }
      next.components()[f] = std::move(acc);
    }
    cur = std::move(next);
  }
  for (auto& c : cur.components()) c = ch.to_new(c);
  return cur;
}

TorsionSet transform_torsion(const TorsionSet& t, const CoordChange& ch) {
  TorsionSet o = t;
  for (auto* d : {&o.Tbar1j, &o.T1j, &o.Tij, &o.Pbar, &o.Pij, &o.S, &o.P1j, &o.Pijv, &o.R1j,
                  &o.Rij})
    *d = transform_dtensor(*d, ch);
  return o;
}

CurvatureSet transform_curvature(const CurvatureSet& c, const CoordChange& ch) {
  CurvatureSet o = c;
  for (auto* d : {&o.Rbar11k, &o.Ril1k, &o.Rv1, &o.Rbar1jk, &o.Rlijk, &o.Rvjk, &o.Pbar11k,
                  &o.Pli1k, &o.Pv11k, &o.Pbar1jk, &o.Plijk, &o.Pvjk, &o.Sbar1jk, &o.Slijk,
                  &o.Svijk})
    *d = transform_dtensor(*d, ch);
  return o;
}

Expr transform_christoffel_time(const Expr& H, const CoordChange& ch) {
  // H~ = H dt/dt~ + (dt~/dt) d2t/dt~2 with d2t/dt~2 = -t~'' / t~'^3.
  const Expr rdt = inv(ch.dt());
  return ch.to_new(H * rdt + ch.dt() * (-(ch.ddt() * rdt.pow(3))));
}

Arr3 transform_christoffel_spatial(const Arr3& gamma, const CoordChange& ch) {
  const JetSpace& sp = ch.space();
  const int n = sp.n();
  const Mat& J = ch.J();
  const Mat& Ji = ch.Jinv();
  Arr3 out = zero_arr3(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r) {
        Expr hom;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
              if (gamma[i][j][k].is_zero()) continue;
              hom += gamma[i][j][k] * J[p][i] * Ji[j][q] * Ji[k][r];
            }
        // (dx~^p/dx^l)(d2x^l/dx~^q dx~^r), the second factor taken from the
        // inverse map in the new chart.
        Expr inh;
        for (int l = 0; l < n; ++l) {
          Expr d2 = differentiate(differentiate(ch.x_old()[l], sp.space_name(q)),
                                  sp.space_name(r));
          if (d2.is_zero()) continue;
          inh += ch.to_new(J[p][l]) * d2;
        }
        out[p][q][r] = ch.to_new(hom) + inh;
      }
  return out;
}

IdentityReport decide_mapped(std::vector<std::pair<std::string, Expr>> residuals,
                             const CoordChange& ch, const CheckOptions& opt) {
  std::stable_sort(residuals.begin(), residuals.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Expr> exprs;
  exprs.reserve(residuals.size());
  for (const auto& r : residuals) exprs.push_back(r.second);
  const SampleBox box = ch.space().box();
  const std::vector<std::string> vars = sample_vars(ch.space());
  const std::uint64_t seed = opt.seed;
  PointSource src = [&](std::size_t index, int attempt) -> Point {
    Point p = box.draw(vars, seed, index, attempt);
    try {
      return ch.map_point(p);
    } catch (const EvaluationSingularity&) {
      for (auto& [k, v] : p) v = std::nan("");
      return p;
    }
  };
  std::vector<ZeroVerdict> v = zero_test_many(exprs, src, opt.samples, opt.tol, opt.exec, seed);
  IdentityReport rep;
  for (std::size_t i = 0; i < residuals.size(); ++i)
    rep.entries.push_back({std::move(residuals[i].first), std::move(exprs[i]), v[i]});
  return rep;
}

namespace {

std::string flat_index(const DTensor& T, std::size_t f) {
  std::string s = "[";
  auto I = T.multi_index(f);
  for (std::size_t q = 0; q < I.size(); ++q) {
    if (q) s += ",";
    s += std::to_string(I[q] + 1);
  }
  return s + "]";
}

void append(std::vector<std::pair<std::string, Expr>>& out,
            std::vector<std::pair<std::string, Expr>> more) {
  for (auto& m : more) out.push_back(std::move(m));
}

std::vector<std::pair<std::string, Expr>> family_residuals(const std::string& prefix,
                                                           const std::vector<Family>& old_f,
                                                           const std::vector<Family>& new_f,
                                                           const CoordChange& ch) {
  std::vector<std::pair<std::string, Expr>> out;
  for (std::size_t i = 0; i < old_f.size(); ++i)
    append(out, dtensor_covariance_residuals(prefix + "." + old_f[i].id, *old_f[i].tensor,
                                             *new_f[i].tensor, ch));
  return out;
}

}  // namespace

std::vector<std::pair<std::string, Expr>> dtensor_covariance_residuals(
    const std::string& prefix, const DTensor& old_tensor, const DTensor& new_tensor,
    const CoordChange& ch) {
  if (!(old_tensor.signature() == new_tensor.signature()) || old_tensor.n() != new_tensor.n())
    throw SignatureMismatch("covariance check of tensors with different signatures");
  DTensor pushed = transform_dtensor(old_tensor, ch);
  std::vector<std::pair<std::string, Expr>> out;
  for (std::size_t f = 0; f < pushed.size(); ++f)
    out.emplace_back(prefix + flat_index(pushed, f),
                     new_tensor.components()[f] - pushed.components()[f]);
  return out;
}

IdentityReport covariance_check(const TimeMetric& h, const SpatialMetric& phi,
                                const CoordChange& ch, const CheckOptions& opt) {
  const JetSpace& sp = ch.space();
  const int n = sp.n();
  TimeMetric ht = transform_time_metric(h, ch);
  SpatialMetric pt = transform_spatial_metric(phi, ch);
  std::vector<std::pair<std::string, Expr>> res;

  res.emplace_back("christoffel.H",
                   christoffel_time(sp, ht) -
                       transform_christoffel_time(christoffel_time(sp, h), ch));
  Arr3 g_new = christoffel_spatial(sp, pt);
  Arr3 g_rule = transform_christoffel_spatial(christoffel_spatial(sp, phi), ch);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        res.emplace_back("christoffel.gamma[" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + "," + std::to_string(k + 1) + "]",
                         g_new[i][j][k] - g_rule[i][j][k]);

  NonlinearConnection nlc_new = canonical_nlc(sp, ht, pt);
  NonlinearConnection nlc_rule = transform_nlc(canonical_nlc(sp, h, phi), ch);
  for (int i = 0; i < n; ++i) {
    res.emplace_back("nlc.M[" + std::to_string(i + 1) + "]", nlc_new.M[i] - nlc_rule.M[i]);
    for (int j = 0; j < n; ++j)
      res.emplace_back("nlc.N[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]",
                       nlc_new.N[i][j] - nlc_rule.N[i][j]);
  }

  GammaConnection b_old = berwald_connection(sp, h, phi);
  GammaConnection b_new = berwald_connection(sp, ht, pt);
  GammaConnection b_rule = transform_connection(b_old, ch);
  auto blk = [&](const char* name, std::initializer_list<int> idx, const Expr& a,
                 const Expr& b) {
    std::string s = std::string("berwald.") + name;
    for (int v : idx) s += "[" + std::to_string(v + 1) + "]";
    res.emplace_back(s, a - b);
  };
  blk("Gbar", {}, b_new.Gbar, b_rule.Gbar);
  for (int a = 0; a < n; ++a) {
    blk("Lbar", {a}, b_new.Lbar[a], b_rule.Lbar[a]);
    blk("Cbar", {a}, b_new.Cbar[a], b_rule.Cbar[a]);
    for (int b = 0; b < n; ++b) {
      blk("G", {a, b}, b_new.G[a][b], b_rule.G[a][b]);
      blk("Gv", {a, b}, b_new.Gv[a][b], b_rule.Gv[a][b]);
      for (int c = 0; c < n; ++c) {
        blk("L", {a, b, c}, b_new.L[a][b][c], b_rule.L[a][b][c]);
        blk("Lv", {a, b, c}, b_new.Lv[a][b][c], b_rule.Lv[a][b][c]);
        blk("C", {a, b, c}, b_new.C[a][b][c], b_rule.C[a][b][c]);
        blk("Cv", {a, b, c}, b_new.Cv[a][b][c], b_rule.Cv[a][b][c]);
      }
    }
  }

  TorsionSet t_old = torsion_components(b_old);
  TorsionSet t_new = torsion_components(b_new);
  append(res, family_residuals("torsion", families(t_old), families(t_new), ch));
  CurvatureSet c_old = curvature_components(b_old, t_old);
  CurvatureSet c_new = curvature_components(b_new, t_new);
  append(res, family_residuals("curvature", families(c_old), families(c_new), ch));
  return decide_mapped(std::move(res), ch, opt);
}

IdentityReport covariance_check(const GammaConnection& conn, const CoordChange& ch,
                                const CheckOptions& opt) {
  GammaConnection moved = transform_connection(conn, ch);
  std::vector<std::pair<std::string, Expr>> res;
  TorsionSet t_old = torsion_components(conn);
  TorsionSet t_new = torsion_components(moved);
  append(res, family_residuals("torsion", families(t_old), families(t_new), ch));
  CurvatureSet c_old = curvature_components(conn, t_old);
  CurvatureSet c_new = curvature_components(moved, t_new);
  append(res, family_residuals("curvature", families(c_old), families(c_new), ch));
  DeflectionSet d_old = deflection_closed_form(conn);
  DeflectionSet d_new = deflection_closed_form(moved);
  append(res, dtensor_covariance_residuals("deflection.Dbar", d_old.Dbar, d_new.Dbar, ch));
  append(res, dtensor_covariance_residuals("deflection.D", d_old.D, d_new.D, ch));
  append(res, dtensor_covariance_residuals("deflection.d", d_old.d, d_new.d, ch));
  return decide_mapped(std::move(res), ch, opt);
}

IdentityReport covariance_check(const DTensor& old_tensor, const DTensor& new_tensor,
                                const CoordChange& ch, const CheckOptions& opt) {
  return decide_mapped(dtensor_covariance_residuals("tensor", old_tensor, new_tensor, ch), ch,
                       opt);
}

}  // namespace jetgeo
