#pragma once

// Product coordinate changes t~ = t~(t), x~ = x~(x) of the 1-jet space and the
// transformation rules of metrics, connections and d-tensors.
//
// New coordinates reuse the variable names of the old chart; user-supplied
// inverses are written in those names. Rules are applied in old coordinates
// and the results re-expressed through the inverses.

#include "jetgeo/curvtor.hpp"
#include "jetgeo/identities.hpp"

namespace jetgeo {

class CoordChange {
 public:
  const JetSpace& space() const noexcept { return space_; }
  const Expr& t_new() const noexcept { return t_new_; }
  const Vec& x_new() const noexcept { return x_new_; }
  const Expr& t_old() const noexcept { return t_old_; }
  const Vec& x_old() const noexcept { return x_old_; }

  // Old-coordinate Jacobian data.
  const Expr& dt() const noexcept { return dt_; }  // dt~/dt
  const Expr& ddt() const noexcept { return ddt_; }  // d2t~/dt2
  const Mat& J() const noexcept { return J_; }  // J[i][j] = dx~^i/dx^j
  const Mat& Jinv() const noexcept { return Jinv_; }  // Jinv[i][j] = dx^i/dx~^j
  const Arr3& hess() const noexcept { return hess_; }  // hess[s][i][j] = d2x~^s/dx^i dx^j

  // y~ = J y / (dt~/dt) in old coordinates.
  const Vec& fiber_new() const noexcept { return y_new_; }

  // Re-expresses an old-coordinate function in the new chart.
  Expr to_new(const Expr& e) const;
  // Maps an old point p to ch(p); parameters are copied.
  Point map_point(const Point& p) const;

  friend CoordChange change_of_coords(const JetSpace&, Expr, Vec, Expr, Vec);

 private:
  explicit CoordChange(JetSpace s) : space_(std::move(s)) {}

  JetSpace space_;
  Expr t_new_, t_old_;
  Vec x_new_, x_old_;
  Expr dt_, ddt_;
  Mat J_, Jinv_;
  Arr3 hess_;
  Vec y_new_;
  Substitution to_new_;
};

// Validates the change on the sample box of space. Throws NotProductChange
// when t~ or t_old involve space coordinates or x~ or x_old involve time or
// fibers; JacobianSingular when dt~/dt or det J vanishes or changes sign on
// the samples; InverseMismatch when the inverses fail the round trip.
CoordChange change_of_coords(const JetSpace& space, Expr t_new, Vec x_new, Expr t_old,
                             Vec x_old);

// h~ = h(t_old) (dt_old/dt~)^2 and phi~ = Jinv^T phi(x_old) Jinv in new
// coordinates.
TimeMetric transform_time_metric(const TimeMetric& h, const CoordChange& ch);
SpatialMetric transform_spatial_metric(const SpatialMetric& phi, const CoordChange& ch);

NonlinearConnection transform_nlc(const NonlinearConnection& nlc, const CoordChange& ch);
GammaConnection transform_connection(const GammaConnection& conn, const CoordChange& ch);

// One Jacobian-type factor per slot, then re-expressed in the new chart.
DTensor transform_dtensor(const DTensor& T, const CoordChange& ch);
TorsionSet transform_torsion(const TorsionSet& t, const CoordChange& ch);
CurvatureSet transform_curvature(const CurvatureSet& c, const CoordChange& ch);

// Christoffel symbols pushed through their own transformation rules.
Expr transform_christoffel_time(const Expr& H, const CoordChange& ch);
Arr3 transform_christoffel_spatial(const Arr3& gamma, const CoordChange& ch);

// Decides new-chart residuals at the mapped points ch(p) of the old box.
IdentityReport decide_mapped(std::vector<std::pair<std::string, Expr>> residuals,
                             const CoordChange& ch, const CheckOptions& opt);

// Compute-then-transform minus transform-then-compute.
std::vector<std::pair<std::string, Expr>> dtensor_covariance_residuals(
    const std::string& prefix, const DTensor& old_tensor, const DTensor& new_tensor,
    const CoordChange& ch);

// Metric pipeline: Christoffel symbols, canonical nonlinear connection,
// Berwald connection, its torsion and curvature.
IdentityReport covariance_check(const TimeMetric& h, const SpatialMetric& phi,
                                const CoordChange& ch, const CheckOptions& opt);
// Connection pipeline: torsion, curvature and deflection d-tensors.
IdentityReport covariance_check(const GammaConnection& conn, const CoordChange& ch,
                                const CheckOptions& opt);
IdentityReport covariance_check(const DTensor& old_tensor, const DTensor& new_tensor,
                                const CoordChange& ch, const CheckOptions& opt);

}  // namespace jetgeo
