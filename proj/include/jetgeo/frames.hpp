#pragma once

// Adapted frame operators d/dt - M d/dy, d/dx^i - N_i d/dy, d/dy_i acting on
// scalar expressions, and the bracket d-tensors R_(1)1j, R_(1)ij.

#include "jetgeo/arrays.hpp"
#include "jetgeo/geometry.hpp"

namespace jetgeo {

// Index kinds of the decorated alphabet: the time index 1, spatial indices i
// and vertical indices (i).
enum class Kind : std::uint8_t { Time, Space, Vert };

struct FrameOp {
  Kind kind = Kind::Time;
  int index = 0;  // 0-based; ignored for Kind::Time

  static FrameOp time() { return {Kind::Time, 0}; }
  static FrameOp space(int i) { return {Kind::Space, i}; }
  static FrameOp vert(int i) { return {Kind::Vert, i}; }
};

// Throws IndexOutOfRange when the index is not in 0..n-1.
Expr apply_frame(const NonlinearConnection& nlc, FrameOp op, const Expr& f);

// R1j[r][j] = R_(1)1j^(r), Rij[r][i][j] = R_(1)ij^(r).
struct Brackets {
  Mat R1j;
  Arr3 Rij;
};

Brackets bracket_tensors(const NonlinearConnection& nlc);

}  // namespace jetgeo
