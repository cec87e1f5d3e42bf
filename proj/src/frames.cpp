#include "jetgeo/frames.hpp"

#include "jetgeo/error.hpp"

namespace jetgeo {

Expr apply_frame(const NonlinearConnection& nlc, FrameOp op, const Expr& f) {
  const JetSpace& s = nlc.space;
  const int n = s.n();
  if (op.kind != Kind::Time && (op.index < 0 || op.index >= n))
    throw IndexOutOfRange("frame index " + std::to_string(op.index + 1) + " outside 1.." +
                          std::to_string(n));
  if (op.kind == Kind::Vert) return differentiate(f, s.fiber_name(op.index));
  const std::string& base = op.kind == Kind::Time ? s.time_name() : s.space_name(op.index);
  Expr out = differentiate(f, base);
  for (int k = 0; k < n; ++k) {
    const Expr& coeff = op.kind == Kind::Time ? nlc.M[k] : nlc.N[k][op.index];
    if (coeff.is_zero()) continue;
    Expr dy = differentiate(f, s.fiber_name(k));
    if (!dy.is_zero()) out -= coeff * dy;
  }
  return out;
}

Brackets bracket_tensors(const NonlinearConnection& nlc) {
  const int n = nlc.space.n();
  Brackets b{zero_mat(n), zero_arr3(n)};
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j < n; ++j) {
      b.R1j[r][j] = apply_frame(nlc, FrameOp::space(j), nlc.M[r]) -
                    apply_frame(nlc, FrameOp::time(), nlc.N[r][j]);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Expr v = apply_frame(nlc, FrameOp::space(j), nlc.N[r][i]) -
                 apply_frame(nlc, FrameOp::space(i), nlc.N[r][j]);
        b.Rij[r][i][j] = v;
        b.Rij[r][j][i] = -v;
      }
    }
  }
  return b;
}

}  // namespace jetgeo
