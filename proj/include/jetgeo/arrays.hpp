#pragma once

// Dense nested component arrays. Index order always follows the decorated
// index order documented at each use site: upper index first, then lower
// indices left to right.

#include <cstddef>
#include <vector>

#include "jetgeo/expr.hpp"

namespace jetgeo {

using Vec = std::vector<Expr>;
using Mat = std::vector<Vec>;
using Arr3 = std::vector<Mat>;
using Arr4 = std::vector<Arr3>;

inline Vec zero_vec(int n) { return Vec(static_cast<std::size_t>(n)); }
inline Mat zero_mat(int n) { return Mat(static_cast<std::size_t>(n), zero_vec(n)); }
inline Arr3 zero_arr3(int n) { return Arr3(static_cast<std::size_t>(n), zero_mat(n)); }
inline Arr4 zero_arr4(int n) { return Arr4(static_cast<std::size_t>(n), zero_arr3(n)); }

inline Mat identity_mat(int n) {
  Mat m = zero_mat(n);
  for (int i = 0; i < n; ++i) m[i][i] = Expr(1);
  return m;
}

}  // namespace jetgeo
