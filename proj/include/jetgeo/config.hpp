#pragma once

// Scene and coordinate-change files.
//
// Scene files are line oriented; '#' starts a comment:
//   time t
//   space 2 x1 x2          (names optional, default x1..xn)
//   fiber y1_1 y1_2        (optional, default y1_1..y1_n)
//   param pi = 3.14159265358979
//   box t 0.5 2            (sampling interval override)
//   h11 = exp(2*t)
//   phi[1][1] = 1
// Explicit connections use Gbar, G[k][i], Gv[k][i], Lbar[j], L[k][i][j],
// Lv[k][i][j], Cbar[k], C[k][i][j], Cv[k][i][j], M[i], N[i][j]; omitted
// entries are 0. Optional: X1, X[i], Xv[i] (a d-vector), Dlow[i][j],
// samples N, seed S, tol T. Indices are 1-based.
//
// A file whose first non-blank character is '{' is read as a machine report
// and its "config" lines are parsed instead.
//
// Change files hold t_new, x_new[i], t_old, x_old[i].

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetgeo/dtensor.hpp"
#include "jetgeo/transform.hpp"

namespace jetgeo {

inline constexpr int kMaxDimension = 4;

struct SceneConfig {
  JetSpace space;
  std::optional<TimeMetric> h;
  std::optional<SpatialMetric> phi;
  std::optional<GammaConnection> connection;
  std::optional<DVector> dvector;
  std::optional<Mat> Dlow;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;

  bool has_metric() const noexcept { return h.has_value(); }
};

// Throws ConfigSyntax (with a line number), ShapeMismatch, MissingSection,
// DimensionTooLarge, SingularMetric.
SceneConfig parse_config(std::string_view text);
SceneConfig load_config(const std::string& path);

CoordChange parse_change(std::string_view text, const JetSpace& space);
CoordChange load_change(const std::string& path, const JetSpace& space);

// Declaration lines (time, space, fiber, param, box) of a jet space.
std::vector<std::string> space_config_lines(const JetSpace& space);
// A loadable explicit-connection scene for conn.
std::vector<std::string> connection_config_lines(const GammaConnection& conn);

// Reads a whole file; throws MissingSection when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace jetgeo
