#include "jetgeo/identities.hpp"

#include <algorithm>
#include <random>

#include "jetgeo/error.hpp"

namespace jetgeo {

bool IdentityReport::all_pass() const noexcept { return failures() == 0; }

std::size_t IdentityReport::failures() const noexcept {
  std::size_t f = 0;
  for (const auto& e : entries) f += e.verdict.zero ? 0 : 1;
  return f;
}

const IdentityResult* IdentityReport::find(std::string_view name) const noexcept {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

IdentityReport decide(std::vector<std::pair<std::string, Expr>> residuals,
                      const JetSpace& space, const CheckOptions& opt) {
  std::stable_sort(residuals.begin(), residuals.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Expr> exprs;
  exprs.reserve(residuals.size());
  for (const auto& r : residuals) exprs.push_back(r.second);
  ZeroOptions zo;
  zo.trials = opt.samples;
  zo.seed = opt.seed;
  zo.tol = opt.tol;
  zo.box = space.box();
  zo.exec = opt.exec;
  std::vector<ZeroVerdict> v = zero_test_many(exprs, zo);
  IdentityReport rep;
  rep.entries.reserve(residuals.size());
  for (std::size_t i = 0; i < residuals.size(); ++i)
    rep.entries.push_back({std::move(residuals[i].first), std::move(exprs[i]), v[i]});
  return rep;
}

namespace {

int rank_of(Kind k) { return static_cast<int>(k); }

std::string idx(std::initializer_list<std::pair<char, int>> parts) {
  std::string s = "[";
  bool first = true;
  for (const auto& [c, v] : parts) {
    if (!first) s += ",";
    first = false;
    s += c;
    s += '=';
    s += std::to_string(v + 1);
  }
  return s + "]";
}

}  // namespace

Expr torsion_coefficient(const TorsionSet& t, FrameOp F, FrameOp B, FrameOp C) {
  if (rank_of(B.kind) > rank_of(C.kind)) return -torsion_coefficient(t, F, C, B);
  const int b = B.index;
  const int c = C.index;
  const int r = F.index;
  if (B.kind == Kind::Time && C.kind == Kind::Space) {
    switch (F.kind) {
      case Kind::Time: return t.Tbar1j({0, 0, c});
      case Kind::Space: return t.T1j({r, 0, c});
      case Kind::Vert: return t.R1j({r, 0, c});
    }
  }
  if (B.kind == Kind::Space && C.kind == Kind::Space) {
    switch (F.kind) {
      case Kind::Time: return Expr();
      case Kind::Space: return t.Tij({r, b, c});
      case Kind::Vert: return t.Rij({r, b, c});
    }
  }
  if (B.kind == Kind::Time && C.kind == Kind::Vert) {
    switch (F.kind) {
      case Kind::Time: return t.Pbar({0, 0, c});
      case Kind::Space: return Expr();
      case Kind::Vert: return t.P1j({r, 0, c});
    }
  }
  if (B.kind == Kind::Space && C.kind == Kind::Vert) {
    switch (F.kind) {
      case Kind::Time: return Expr();
      case Kind::Space: return t.Pij({r, b, c});
      case Kind::Vert: return t.Pijv({r, b, c});
    }
  }
  if (B.kind == Kind::Vert && C.kind == Kind::Vert)
    return F.kind == Kind::Vert ? t.S({r, b, c}) : Expr();
  return Expr();  // two time directions
}

Expr curvature_coefficient(const CurvatureSet& cs, Kind k, int a, int f, FrameOp B, FrameOp C) {
  if (rank_of(B.kind) > rank_of(C.kind)) return -curvature_coefficient(cs, k, a, f, C, B);
  const int b = B.index;
  const int c = C.index;
  auto pick = [&](const DTensor& tb, const DTensor& ts, const DTensor& tv,
                  bool time_pair) -> Expr {
    const int j = time_pair ? 0 : b;
    switch (k) {
      case Kind::Time: return tb({0, 0, j, c});
      case Kind::Space: return ts({a, f, j, c});
      case Kind::Vert: return tv({a, f, j, c});
    }
    return Expr();
  };
  if (B.kind == Kind::Time && C.kind == Kind::Space)
    return pick(cs.Rbar11k, cs.Ril1k, cs.Rv1, true);
  if (B.kind == Kind::Space && C.kind == Kind::Space)
    return pick(cs.Rbar1jk, cs.Rlijk, cs.Rvjk, false);
  if (B.kind == Kind::Time && C.kind == Kind::Vert)
    return pick(cs.Pbar11k, cs.Pli1k, cs.Pv11k, true);
  if (B.kind == Kind::Space && C.kind == Kind::Vert)
    return pick(cs.Pbar1jk, cs.Plijk, cs.Pvjk, false);
  if (B.kind == Kind::Vert && C.kind == Kind::Vert)
    return pick(cs.Sbar1jk, cs.Slijk, cs.Svijk, false);
  return Expr();
}

std::vector<std::pair<std::string, Expr>> ricci_residuals(const GammaConnection& conn,
                                                          const DVector& X) {
  TorsionSet t = torsion_components(conn);
  CurvatureSet c = curvature_components(conn, t);
  return ricci_residuals(conn, X, t, c);
}

std::vector<std::pair<std::string, Expr>> ricci_residuals(const GammaConnection& conn,
                                                          const DVector& X,
                                                          const TorsionSet& tor,
                                                          const CurvatureSet& cur) {
  const int n = conn.n();
  DVectorParts parts = split(X, n);
  std::vector<std::pair<std::string, Expr>> out;

  struct Block {
    const char* tag;
    char letter;
    const DTensor* X;
    const DTensor *R1k, *Rjk, *P1k, *Pjk, *Sjk;
  };
  const Block blocks[] = {
      {"hR", 'a', &parts.time, &cur.Rbar11k, &cur.Rbar1jk, &cur.Pbar11k, &cur.Pbar1jk,
       &cur.Sbar1jk},
      {"hM", 'i', &parts.space, &cur.Ril1k, &cur.Rlijk, &cur.Pli1k, &cur.Plijk, &cur.Slijk},
      {"v", 'i', &parts.vert, &cur.Rv1, &cur.Rvjk, &cur.Pv11k, &cur.Pvjk, &cur.Svijk},
  };

  for (const Block& blk : blocks) {
    const DTensor& P = *blk.X;
    const int ext = P.extent(0);
    const std::string pre = std::string("ricci.") + blk.tag + ".";
    DTensor d_t = cov_full(P, Kind::Time, conn);
    DTensor d_s = cov_full(P, Kind::Space, conn);
    DTensor d_v = cov_full(P, Kind::Vert, conn);
    DTensor d_ts = cov_full(d_t, Kind::Space, conn);
    DTensor d_st = cov_full(d_s, Kind::Time, conn);
    DTensor d_ss = cov_full(d_s, Kind::Space, conn);
    DTensor d_tv = cov_full(d_t, Kind::Vert, conn);
    DTensor d_vt = cov_full(d_v, Kind::Time, conn);
    DTensor d_sv = cov_full(d_s, Kind::Vert, conn);
    DTensor d_vs = cov_full(d_v, Kind::Space, conn);
    DTensor d_vv = cov_full(d_v, Kind::Vert, conn);

    for (int a = 0; a < ext; ++a) {
      auto name = [&](int id, std::initializer_list<std::pair<char, int>> rest) {
        std::string s = pre + std::to_string(id);
        if (ext == 1) return s + idx(rest);
        std::vector<std::pair<char, int>> all{{blk.letter, a}};
        all.insert(all.end(), rest.begin(), rest.end());
        std::string b = "[";
        for (std::size_t q = 0; q < all.size(); ++q) {
          if (q) b += ",";
          b += all[q].first;
          b += "=" + std::to_string(all[q].second + 1);
        }
        return s + b + "]";
      };
      for (int k = 0; k < n; ++k) {
        // 1: X_/1|k - X_|k/1
        Expr rhs1 = -(d_t({a, 0}) * tor.Tbar1j({0, 0, k}));
        // 3: X_/1|(k) - X|(k)/1
        Expr rhs3 = -(d_t({a, 0}) * conn.Cbar[k]);
        for (int f = 0; f < ext; ++f) {
          rhs1 += P({f}) * (*blk.R1k)({a, f, 0, k});
          rhs3 += P({f}) * (*blk.P1k)({a, f, 0, k});
        }
        for (int r = 0; r < n; ++r) {
          rhs1 -= d_s({a, r}) * tor.T1j({r, 0, k}) + d_v({a, r}) * tor.R1j({r, 0, k});
          rhs3 -= d_v({a, r}) * tor.P1j({r, 0, k});
        }
        out.emplace_back(name(1, {{'k', k}}), d_ts({a, 0, k}) - d_st({a, k, 0}) - rhs1);
        out.emplace_back(name(3, {{'k', k}}), d_tv({a, 0, k}) - d_vt({a, k, 0}) - rhs3);

        for (int j = 0; j < n; ++j) {
          Expr rhs2, rhs4, rhs5;
          for (int f = 0; f < ext; ++f) {
            rhs2 += P({f}) * (*blk.Rjk)({a, f, j, k});
            rhs4 += P({f}) * (*blk.Pjk)({a, f, j, k});
            rhs5 += P({f}) * (*blk.Sjk)({a, f, j, k});
          }
          for (int r = 0; r < n; ++r) {
            rhs2 -= d_s({a, r}) * tor.Tij({r, j, k}) + d_v({a, r}) * tor.Rij({r, j, k});
            rhs4 -= d_s({a, r}) * conn.C[r][j][k] + d_v({a, r}) * tor.Pijv({r, j, k});
            rhs5 -= d_v({a, r}) * tor.S({r, j, k});
          }
          out.emplace_back(name(2, {{'j', j}, {'k', k}}),
                           d_ss({a, j, k}) - d_ss({a, k, j}) - rhs2);
          out.emplace_back(name(4, {{'j', j}, {'k', k}}),
                           d_sv({a, j, k}) - d_vs({a, k, j}) - rhs4);
          out.emplace_back(name(5, {{'j', j}, {'k', k}}),
                           d_vv({a, j, k}) - d_vv({a, k, j}) - rhs5);
        }
      }
    }
  }
  return out;
}

IdentityReport ricci_check(const GammaConnection& conn, const DVector& X,
                           const CheckOptions& opt) {
  return decide(ricci_residuals(conn, X), conn.space(), opt);
}

DTensor commutator_residual(const DTensor& T, FrameOp B, FrameOp C, const GammaConnection& conn) {
  TorsionSet t = torsion_components(conn);
  CurvatureSet c = curvature_components(conn, t);
  return commutator_residual(T, B, C, conn, t, c);
}

DTensor commutator_residual(const DTensor& T, FrameOp B, FrameOp C, const GammaConnection& conn,
                            const TorsionSet& tor, const CurvatureSet& cur) {
  const int n = conn.n();
  // T_{:B:C}: differentiate along B with the slot appended, then along C and
  // read the appended slot at B's index.
  DTensor TB_C = cov(cov_full(T, B.kind, conn), C, conn);
  DTensor TC_B = cov(cov_full(T, C.kind, conn), B, conn);
  const auto extB = static_cast<std::size_t>(slot_extent(B.kind, n));
  const auto extC = static_cast<std::size_t>(slot_extent(C.kind, n));

  // Covariant derivatives along every adapted direction, for the torsion term.
  std::vector<std::pair<FrameOp, DTensor>> first;
  first.emplace_back(FrameOp::time(), cov(T, FrameOp::time(), conn));
  for (int r = 0; r < n; ++r) first.emplace_back(FrameOp::space(r), cov(T, FrameOp::space(r), conn));
  for (int r = 0; r < n; ++r) first.emplace_back(FrameOp::vert(r), cov(T, FrameOp::vert(r), conn));
  std::vector<Expr> tcoef;
  for (const auto& [F, _] : first) tcoef.push_back(torsion_coefficient(tor, F, B, C));

  const Signature& sig = T.signature();
  DTensor out(n, sig);
  for (std::size_t f = 0; f < T.size(); ++f) {
    std::vector<int> I = T.multi_index(f);
    Expr v = TB_C.components()[f * extB + static_cast<std::size_t>(B.index)] -
             TC_B.components()[f * extC + static_cast<std::size_t>(C.index)];
    for (std::size_t s = 0; s < sig.size(); ++s) {
      const Kind k = sig[s].kind;
      std::vector<int> J = I;
      for (int g = 0; g < slot_extent(k, n); ++g) {
        J[s] = g;
        const Expr& comp = T.at(J);
        if (comp.is_zero()) continue;
        if (sig[s].variance == Variance::Up)
          v -= comp * curvature_coefficient(cur, k, I[s], g, B, C);
        else
          v += comp * curvature_coefficient(cur, k, g, I[s], B, C);
      }
    }
    for (std::size_t q = 0; q < first.size(); ++q)
      if (!tcoef[q].is_zero()) v += first[q].second.components()[f] * tcoef[q];
    out.components()[f] = std::move(v);
  }
  return out;
}

DeflectionSet deflection_closed_form(const GammaConnection& conn) {
  const int n = conn.n();
  const JetSpace& sp = conn.space();
  DeflectionSet d{DTensor(n, {kUpVert, kDownTime}), DTensor(n, {kUpVert, kDownSpace}),
                  DTensor(n, {kUpVert, kDownVert})};
  for (int i = 0; i < n; ++i) {
    Expr db = -conn.nlc.M[i];
    for (int r = 0; r < n; ++r) db += conn.Gv[i][r] * sp.y(r);
    d.Dbar({i, 0}) = db;
    for (int j = 0; j < n; ++j) {
      Expr D = -conn.nlc.N[i][j];
      Expr dd = i == j ? Expr(1) : Expr();
      for (int r = 0; r < n; ++r) {
        D += conn.Lv[i][r][j] * sp.y(r);
        dd += conn.Cv[i][r][j] * sp.y(r);
      }
      d.D({i, j}) = D;
      d.d({i, j}) = dd;
    }
  }
  return d;
}

DeflectionSet deflection_from_liouville(const GammaConnection& conn) {
  DTensor C = liouville(conn.space());
  return DeflectionSet{cov_full(C, Kind::Time, conn), cov_full(C, Kind::Space, conn),
                       cov_full(C, Kind::Vert, conn)};
}

DeflectionSet deflection_tensors(const GammaConnection& conn) {
  DeflectionSet closed = deflection_closed_form(conn);
  DeflectionSet lv = deflection_from_liouville(conn);
  std::vector<Expr> diffs;
  for (auto [a, b] : {std::pair{&closed.Dbar, &lv.Dbar}, std::pair{&closed.D, &lv.D},
                      std::pair{&closed.d, &lv.d}}) {
    for (std::size_t f = 0; f < a->size(); ++f)
      diffs.push_back(a->components()[f] - b->components()[f]);
  }
  ZeroOptions zo;
  zo.box = conn.space().box();
  for (const auto& v : zero_test_many(diffs, zo))
    if (!v.zero)
      throw InternalInconsistency(
          "deflection closed forms disagree with the Liouville derivatives");
  return closed;
}

std::vector<std::pair<std::string, Expr>> deflection_residuals(const GammaConnection& conn) {
  TorsionSet t = torsion_components(conn);
  CurvatureSet c = curvature_components(conn, t);
  return deflection_residuals(conn, deflection_tensors(conn), t, c);
}

std::vector<std::pair<std::string, Expr>> deflection_residuals(const GammaConnection& conn,
                                                               const DeflectionSet& Dset,
                                                               const TorsionSet& tor,
                                                               const CurvatureSet& cur) {
  const int n = conn.n();
  const JetSpace& sp = conn.space();
  const DTensor& Dbar = Dset.Dbar;
  const DTensor& D = Dset.D;
  const DTensor& d = Dset.d;
  DTensor Dbar_s = cov_full(Dbar, Kind::Space, conn);
  DTensor Dbar_v = cov_full(Dbar, Kind::Vert, conn);
  DTensor D_t = cov_full(D, Kind::Time, conn);
  DTensor D_s = cov_full(D, Kind::Space, conn);
  DTensor D_v = cov_full(D, Kind::Vert, conn);
  DTensor d_t = cov_full(d, Kind::Time, conn);
  DTensor d_s = cov_full(d, Kind::Space, conn);
  DTensor d_v = cov_full(d, Kind::Vert, conn);

  std::vector<std::pair<std::string, Expr>> out;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      Expr rhs1 = -(Dbar({i, 0}) * tor.Tbar1j({0, 0, k}));
      Expr rhs3 = -(Dbar({i, 0}) * conn.Cbar[k]);
      for (int r = 0; r < n; ++r) {
        rhs1 += sp.y(r) * cur.Rv1({i, r, 0, k}) - D({i, r}) * tor.T1j({r, 0, k}) -
                d({i, r}) * tor.R1j({r, 0, k});
        rhs3 += sp.y(r) * cur.Pv11k({i, r, 0, k}) - d({i, r}) * tor.P1j({r, 0, k});
      }
      out.emplace_back("deflection.1" + idx({{'i', i}, {'k', k}}),
                       Dbar_s({i, 0, k}) - D_t({i, k, 0}) - rhs1);
      out.emplace_back("deflection.3" + idx({{'i', i}, {'k', k}}),
                       Dbar_v({i, 0, k}) - d_t({i, k, 0}) - rhs3);
      for (int j = 0; j < n; ++j) {
        Expr rhs2, rhs4, rhs5;
        for (int r = 0; r < n; ++r) {
          rhs2 += sp.y(r) * cur.Rvjk({i, r, j, k}) - D({i, r}) * tor.Tij({r, j, k}) -
                  d({i, r}) * tor.Rij({r, j, k});
          rhs4 += sp.y(r) * cur.Pvjk({i, r, j, k}) - D({i, r}) * conn.C[r][j][k] -
                  d({i, r}) * tor.Pijv({r, j, k});
          rhs5 += sp.y(r) * cur.Svijk({i, r, j, k}) - d({i, r}) * tor.S({r, j, k});
        }
        auto nm = idx({{'i', i}, {'j', j}, {'k', k}});
        out.emplace_back("deflection.2" + nm, D_s({i, j, k}) - D_s({i, k, j}) - rhs2);
        out.emplace_back("deflection.4" + nm, D_v({i, j, k}) - d_s({i, k, j}) - rhs4);
        out.emplace_back("deflection.5" + nm, d_v({i, j, k}) - d_v({i, k, j}) - rhs5);
      }
    }
  }
  return out;
}

IdentityReport deflection_identities_check(const GammaConnection& conn, const CheckOptions& opt) {
  return decide(deflection_residuals(conn), conn.space(), opt);
}

Mat em_two_form(const Mat& Dlow) {
  const int n = static_cast<int>(Dlow.size());
  for (const auto& row : Dlow)
    if (static_cast<int>(row.size()) != n) throw ShapeMismatch("Dlow must be square");
  Mat F = zero_mat(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      F[i][j] = (Dlow[i][j] - Dlow[j][i]).scaled(Rational(1, 2));
      F[j][i] = -F[i][j];
    }
  }
  return F;
}

std::vector<std::pair<std::string, Expr>> bracket_residuals(const NonlinearConnection& nlc,
                                                            const Expr& f) {
  return bracket_residuals(nlc, f, bracket_tensors(nlc));
}

std::vector<std::pair<std::string, Expr>> bracket_residuals(const NonlinearConnection& nlc,
                                                            const Expr& f,
                                                            const Brackets& br) {
  const JetSpace& sp = nlc.space;
  const int n = sp.n();
  auto op = [&](FrameOp o, const Expr& g) { return apply_frame(nlc, o, g); };
  auto comm = [&](FrameOp a, FrameOp b) { return op(a, op(b, f)) - op(b, op(a, f)); };
  Vec fy = zero_vec(n);
  for (int r = 0; r < n; ++r) fy[r] = differentiate(f, sp.fiber_name(r));

  std::vector<std::pair<std::string, Expr>> out;
  out.emplace_back("bracket.tt", comm(FrameOp::time(), FrameOp::time()));
  for (int j = 0; j < n; ++j) {
    Expr tx = comm(FrameOp::time(), FrameOp::space(j));
    Expr ty = comm(FrameOp::time(), FrameOp::vert(j));
    for (int r = 0; r < n; ++r) {
      tx -= br.R1j[r][j] * fy[r];
      ty -= differentiate(nlc.M[r], sp.fiber_name(j)) * fy[r];
    }
    out.emplace_back("bracket.tx" + idx({{'j', j}}), tx);
    out.emplace_back("bracket.ty" + idx({{'j', j}}), ty);
    for (int i = 0; i < n; ++i) {
      Expr xx = comm(FrameOp::space(i), FrameOp::space(j));
      Expr xy = comm(FrameOp::space(i), FrameOp::vert(j));
      for (int r = 0; r < n; ++r) {
        xx -= br.Rij[r][i][j] * fy[r];
        xy -= differentiate(nlc.N[r][i], sp.fiber_name(j)) * fy[r];
      }
      out.emplace_back("bracket.xx" + idx({{'i', i}, {'j', j}}), xx);
      out.emplace_back("bracket.xy" + idx({{'i', i}, {'j', j}}), xy);
      out.emplace_back("bracket.yy" + idx({{'i', i}, {'j', j}}),
                       comm(FrameOp::vert(i), FrameOp::vert(j)));
    }
  }
  return out;
}

IdentityReport bracket_check(const NonlinearConnection& nlc, const std::vector<Expr>& fs,
                             const CheckOptions& opt) {
  Brackets br = bracket_tensors(nlc);
  std::vector<std::pair<std::string, Expr>> all;
  for (std::size_t k = 0; k < fs.size(); ++k)
    for (auto& [name, e] : bracket_residuals(nlc, fs[k], br))
      all.emplace_back("f" + std::to_string(k + 1) + "." + name, std::move(e));
  return decide(std::move(all), nlc.space, opt);
}

Expr random_scalar(const JetSpace& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xbb67ae8584caa73bULL);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::vector<Expr> vars;
  for (const auto& c : space.coordinates()) vars.push_back(Expr::variable(c));
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  Expr p = Expr(coeff(rng));
  for (int term = 0; term < 4; ++term) {
    Expr m = Expr(coeff(rng));
    for (int d = 0; d < 3; ++d) m *= vars[pick(rng)];
    p += m;
  }
  return p + Expr(coeff(rng)) * fn::sin(vars[pick(rng)] * vars[pick(rng)]);
}

DVector random_dvector(const JetSpace& space, std::uint64_t seed, int degree) {
  std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc909ULL);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::vector<Expr> vars;
  for (const auto& c : space.coordinates()) vars.push_back(Expr::variable(c));
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  auto poly = [&] {
    Expr p = Expr(coeff(rng));
    for (int term = 0; term < 3; ++term) {
      Expr m = Expr(coeff(rng));
      for (int d = 0; d < degree; ++d) m *= vars[pick(rng)];
      p += m;
    }
    return p;
  };
  DVector X{poly(), {}, {}};
  for (int i = 0; i < space.n(); ++i) X.Xi.push_back(poly());
  for (int i = 0; i < space.n(); ++i) X.Xv.push_back(poly());
  return X;
}

}  // namespace jetgeo
