#include "jetgeo/curvtor.hpp"

#include <exception>

namespace jetgeo {

namespace {

using S = Signature;

DTensor make(int n, S sig) { return DTensor(n, std::move(sig)); }

}  // namespace

std::vector<Family> families(const TorsionSet& t) {
  return {{"Tbar1j", "Tbar", &t.Tbar1j}, {"T1j", "T", &t.T1j},   {"Tij", "T", &t.Tij},
          {"Pbar", "Pbar", &t.Pbar},     {"Pij", "P", &t.Pij},   {"S", "S", &t.S},
          {"P1j", "P", &t.P1j},          {"Pijv", "P", &t.Pijv}, {"R1j", "R", &t.R1j},
          {"Rij", "R", &t.Rij}};
}

std::vector<Family> families(const CurvatureSet& c) {
  return {{"Rbar11k", "Rbar", &c.Rbar11k}, {"Ril1k", "R", &c.Ril1k},
          {"Rv1", "R", &c.Rv1},            {"Rbar1jk", "Rbar", &c.Rbar1jk},
          {"Rlijk", "R", &c.Rlijk},        {"Rvjk", "R", &c.Rvjk},
          {"Pbar11k", "Pbar", &c.Pbar11k}, {"Pli1k", "P", &c.Pli1k},
          {"Pv11k", "P", &c.Pv11k},        {"Pbar1jk", "Pbar", &c.Pbar1jk},
          {"Plijk", "P", &c.Plijk},        {"Pvjk", "P", &c.Pvjk},
          {"Sbar1jk", "Sbar", &c.Sbar1jk}, {"Slijk", "S", &c.Slijk},
          {"Svijk", "S", &c.Svijk}};
}

DTensor cbar_tensor(const GammaConnection& conn) {
  DTensor t = make(conn.n(), {kUpTime, kDownTime, kDownVert});
  for (int k = 0; k < conn.n(); ++k) t({0, 0, k}) = conn.Cbar[k];
  return t;
}

namespace {
DTensor block3(const Arr3& a, int n, S sig) {
  DTensor t = make(n, std::move(sig));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t({k, i, j}) = a[k][i][j];
  return t;
}
}  // namespace

DTensor c_tensor(const GammaConnection& conn) {
  return block3(conn.C, conn.n(), {kUpSpace, kDownSpace, kDownVert});
}

DTensor cv_tensor(const GammaConnection& conn) {
  return block3(conn.Cv, conn.n(), {kUpVert, kDownVert, kDownVert});
}

TorsionSet torsion_components(const GammaConnection& conn) {
  const int n = conn.n();
  const JetSpace& sp = conn.space();
  const NonlinearConnection& nlc = conn.nlc;
  TorsionSet t{
      make(n, {kUpTime, kDownTime, kDownSpace}),   make(n, {kUpSpace, kDownTime, kDownSpace}),
      make(n, {kUpSpace, kDownSpace, kDownSpace}), make(n, {kUpTime, kDownTime, kDownVert}),
      make(n, {kUpSpace, kDownSpace, kDownVert}),  make(n, {kUpVert, kDownVert, kDownVert}),
      make(n, {kUpVert, kDownTime, kDownVert}),    make(n, {kUpVert, kDownSpace, kDownVert}),
      make(n, {kUpVert, kDownTime, kDownSpace}),   make(n, {kUpVert, kDownSpace, kDownSpace})};
  Brackets br = bracket_tensors(nlc);
  for (int j = 0; j < n; ++j) {
    t.Tbar1j({0, 0, j}) = conn.Lbar[j];
    t.Pbar({0, 0, j}) = conn.Cbar[j];
  }
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j < n; ++j) {
      t.T1j({r, 0, j}) = -conn.G[r][j];
      t.P1j({r, 0, j}) = differentiate(nlc.M[r], sp.fiber_name(j)) - conn.Gv[r][j];
      t.R1j({r, 0, j}) = br.R1j[r][j];
      for (int i = 0; i < n; ++i) {
        t.Tij({r, i, j}) = conn.L[r][i][j] - conn.L[r][j][i];
        t.Pij({r, i, j}) = conn.C[r][i][j];
        t.S({r, i, j}) = conn.Cv[r][i][j] - conn.Cv[r][j][i];
        t.Pijv({r, i, j}) = differentiate(nlc.N[r][i], sp.fiber_name(j)) - conn.Lv[r][j][i];
        t.Rij({r, i, j}) = br.Rij[r][i][j];
      }
    }
  }
  return t;
}

CurvatureSet curvature_components(const GammaConnection& conn) {
  return curvature_components(conn, torsion_components(conn));
}

CurvatureSet curvature_components(const GammaConnection& conn, const TorsionSet& tor) {
  const int n = conn.n();
  const JetSpace& sp = conn.space();
  const NonlinearConnection& nlc = conn.nlc;
  auto dt = [&](const Expr& f) { return apply_frame(nlc, FrameOp::time(), f); };
  auto dx = [&](const Expr& f, int k) { return apply_frame(nlc, FrameOp::space(k), f); };
  auto dy = [&](const Expr& f, int k) { return differentiate(f, sp.fiber_name(k)); };
  auto R1 = [&](int r, int k) -> const Expr& { return tor.R1j({r, 0, k}); };
  auto Rjk = [&](int r, int j, int k) -> const Expr& { return tor.Rij({r, j, k}); };
  auto P1 = [&](int r, int k) -> const Expr& { return tor.P1j({r, 0, k}); };
  auto Pj = [&](int r, int j, int k) -> const Expr& { return tor.Pijv({r, j, k}); };

  CurvatureSet c{make(n, {kUpTime, kDownTime, kDownTime, kDownSpace}),
                 make(n, {kUpSpace, kDownSpace, kDownTime, kDownSpace}),
                 make(n, {kUpVert, kDownVert, kDownTime, kDownSpace}),
                 make(n, {kUpTime, kDownTime, kDownSpace, kDownSpace}),
                 make(n, {kUpSpace, kDownSpace, kDownSpace, kDownSpace}),
                 make(n, {kUpVert, kDownVert, kDownSpace, kDownSpace}),
                 make(n, {kUpTime, kDownTime, kDownTime, kDownVert}),
                 make(n, {kUpSpace, kDownSpace, kDownTime, kDownVert}),
                 make(n, {kUpVert, kDownVert, kDownTime, kDownVert}),
                 make(n, {kUpTime, kDownTime, kDownSpace, kDownVert}),
                 make(n, {kUpSpace, kDownSpace, kDownSpace, kDownVert}),
                 make(n, {kUpVert, kDownVert, kDownSpace, kDownVert}),
                 make(n, {kUpTime, kDownTime, kDownVert, kDownVert}),
                 make(n, {kUpSpace, kDownSpace, kDownVert, kDownVert}),
                 make(n, {kUpVert, kDownVert, kDownVert, kDownVert})};

  const DTensor Cb = cbar_tensor(conn);
  const DTensor Cs = c_tensor(conn);
  const DTensor Cvt = cv_tensor(conn);

  // The horizontal (G, L) blocks and the vertical (Gv, Lv) blocks enter items
  // 6-10 and 11-15 identically; only the C block used for the corrections
  // differs.
  auto space_family = [&](const Mat& G, const Arr3& L, const Arr3& C, const DTensor& Ct,
                          DTensor& R1k, DTensor& Rjk_out, DTensor& P1k, DTensor& Pjk,
                          DTensor& Sjk) {
    DTensor Ct_t = cov_time(Ct, conn);
    for (int l = 0; l < n; ++l) {
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
          Expr v = dx(G[l][i], k) - dt(L[l][i][k]);
          Expr p = dy(G[l][i], k) - Ct_t({l, i, k});
          for (int r = 0; r < n; ++r) {
            v += G[r][i] * L[l][r][k] - L[r][i][k] * G[l][r] + C[l][i][r] * R1(r, k);
            p += C[l][i][r] * P1(r, k);
          }
          R1k({l, i, 0, k}) = std::move(v);
          P1k({l, i, 0, k}) = std::move(p);
        }
      }
    }
    for (int j = 0; j < n; ++j) {
      DTensor Ct_j = cov_space(Ct, j, conn);
      for (int l = 0; l < n; ++l) {
        for (int i = 0; i < n; ++i) {
          for (int k = 0; k < n; ++k) {
            Expr v = dx(L[l][i][j], k) - dx(L[l][i][k], j);
            Expr p = dy(L[l][i][j], k) - Ct_j({l, i, k});
            Expr s = dy(C[l][i][j], k) - dy(C[l][i][k], j);
            for (int r = 0; r < n; ++r) {
              v += L[r][i][j] * L[l][r][k] - L[r][i][k] * L[l][r][j] + C[l][i][r] * Rjk(r, j, k);
              p += C[l][i][r] * Pj(r, j, k);
              s += C[r][i][j] * C[l][r][k] - C[r][i][k] * C[l][r][j];
            }
            Rjk_out({l, i, j, k}) = std::move(v);
            Pjk({l, i, j, k}) = std::move(p);
            Sjk({l, i, j, k}) = std::move(s);
          }
        }
      }
    }
  };

  auto time_family = [&]() {
    DTensor Cb_t = cov_time(Cb, conn);
    for (int k = 0; k < n; ++k) {
      Expr v = dx(conn.Gbar, k) - dt(conn.Lbar[k]);
      Expr p = dy(conn.Gbar, k) - Cb_t({0, 0, k});
      for (int r = 0; r < n; ++r) {
        v += conn.Cbar[r] * R1(r, k);
        p += conn.Cbar[r] * P1(r, k);
      }
      c.Rbar11k({0, 0, 0, k}) = std::move(v);
      c.Pbar11k({0, 0, 0, k}) = std::move(p);
    }
    for (int j = 0; j < n; ++j) {
      DTensor Cb_j = cov_space(Cb, j, conn);
      for (int k = 0; k < n; ++k) {
        Expr v = dx(conn.Lbar[j], k) - dx(conn.Lbar[k], j);
        Expr p = dy(conn.Lbar[j], k) - Cb_j({0, 0, k});
        Expr s = dy(conn.Cbar[j], k) - dy(conn.Cbar[k], j);
        for (int r = 0; r < n; ++r) {
          v += conn.Cbar[r] * Rjk(r, j, k);
          p += conn.Cbar[r] * Pj(r, j, k);
        }
        c.Rbar1jk({0, 0, j, k}) = std::move(v);
        c.Pbar1jk({0, 0, j, k}) = std::move(p);
        c.Sbar1jk({0, 0, j, k}) = std::move(s);
      }
    }
  };

  // Errors cannot cross an OpenMP region; capture and rethrow after it.
  std::exception_ptr err[3];
  auto guarded = [&err](int slot, auto&& fn) {
    try {
      fn();
    } catch (...) {
      err[slot] = std::current_exception();
    }
  };
#pragma omp parallel sections
  {
#pragma omp section
    guarded(0, time_family);
#pragma omp section
    guarded(1, [&] {
      space_family(conn.G, conn.L, conn.C, Cs, c.Ril1k, c.Rlijk, c.Pli1k, c.Plijk, c.Slijk);
    });
#pragma omp section
    guarded(2, [&] {
      space_family(conn.Gv, conn.Lv, conn.Cv, Cvt, c.Rv1, c.Rvjk, c.Pv11k, c.Pvjk, c.Svijk);
    });
  }
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
  return c;
}

}  // namespace jetgeo
