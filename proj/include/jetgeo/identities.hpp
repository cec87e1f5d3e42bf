#pragma once

// Executable forms of the Ricci identities, the deflection d-tensors and
// their identities, and the electromagnetic 2-form.

#include <cstdint>
#include <string>
#include <vector>

#include "jetgeo/curvtor.hpp"
#include "jetgeo/dtensor.hpp"
#include "jetgeo/zero_test.hpp"

namespace jetgeo {

struct CheckOptions {
  int samples = 32;
  std::uint64_t seed = 0;
  double tol = kDefaultZeroTol;
  Exec exec = Exec::Parallel;
};

struct IdentityResult {
  std::string name;
  Expr residual;
  ZeroVerdict verdict;
};

struct IdentityReport {
  std::vector<IdentityResult> entries;  // sorted by name

  bool all_pass() const noexcept;
  std::size_t failures() const noexcept;
  const IdentityResult* find(std::string_view name) const noexcept;
};

// Decides every residual on one shared set of sample points from the box of
// space; entries come back sorted by name.
IdentityReport decide(std::vector<std::pair<std::string, Expr>> residuals,
                      const JetSpace& space, const CheckOptions& opt);

// T^F_BC with T(Y_C, Y_B) = T^F_BC Y_F; F, B, C are adapted directions.
Expr torsion_coefficient(const TorsionSet& t, FrameOp F, FrameOp B, FrameOp C);
// R^a_fBC with R(Y_C, Y_B) Y_f = R^a_fBC Y_a, for an index pair of kind k.
Expr curvature_coefficient(const CurvatureSet& c, Kind k, int a, int f, FrameOp B, FrameOp C);

// The fifteen Ricci identities for the d-vector X, LHS - RHS per component.
// Names look like "ricci.hM.2[i=1,j=1,k=2]".
std::vector<std::pair<std::string, Expr>> ricci_residuals(const GammaConnection& conn,
                                                          const DVector& X);
std::vector<std::pair<std::string, Expr>> ricci_residuals(const GammaConnection& conn,
                                                          const DVector& X,
                                                          const TorsionSet& t,
                                                          const CurvatureSet& c);
IdentityReport ricci_check(const GammaConnection& conn, const DVector& X,
                           const CheckOptions& opt);

// T_{:B:C} - T_{:C:B} - (sum over slots of the curvature terms
// - T_{:F} T^F_BC) for an arbitrary d-tensor; every component is 0 by the
// Ricci identities.
DTensor commutator_residual(const DTensor& T, FrameOp B, FrameOp C, const GammaConnection& conn);
DTensor commutator_residual(const DTensor& T, FrameOp B, FrameOp C, const GammaConnection& conn,
                            const TorsionSet& t, const CurvatureSet& c);

// Dbar ((i) | 1), D ((i) | j), d ((i) | (j)).
struct DeflectionSet {
  DTensor Dbar;
  DTensor D;
  DTensor d;
};

// Closed forms -M + Gv y, -N + Lv y, delta + Cv y, checked against the
// covariant derivatives of the Liouville d-tensor. Throws
// InternalInconsistency when the two constructions disagree.
DeflectionSet deflection_tensors(const GammaConnection& conn);
DeflectionSet deflection_closed_form(const GammaConnection& conn);
DeflectionSet deflection_from_liouville(const GammaConnection& conn);

// Names look like "deflection.4[i=1,j=2,k=1]".
std::vector<std::pair<std::string, Expr>> deflection_residuals(const GammaConnection& conn);
std::vector<std::pair<std::string, Expr>> deflection_residuals(const GammaConnection& conn,
                                                               const DeflectionSet& D,
                                                               const TorsionSet& t,
                                                               const CurvatureSet& c);
IdentityReport deflection_identities_check(const GammaConnection& conn, const CheckOptions& opt);

// F = (Dlow - Dlow^T) / 2 for a metrical deflection array with lowered index.
Mat em_two_form(const Mat& Dlow);

// The six bracket identities of the adapted frame applied to f, as
// [A,B]f - (rhs)f. Names look like "bracket.xy[i=1,j=2]".
std::vector<std::pair<std::string, Expr>> bracket_residuals(const NonlinearConnection& nlc,
                                                            const Expr& f,
                                                            const Brackets& br);
std::vector<std::pair<std::string, Expr>> bracket_residuals(const NonlinearConnection& nlc,
                                                            const Expr& f);
// Checks every function in fs; names get a "f<k>." prefix.
IdentityReport bracket_check(const NonlinearConnection& nlc, const std::vector<Expr>& fs,
                             const CheckOptions& opt);

// A seeded scalar: an integer polynomial plus one trigonometric term.
Expr random_scalar(const JetSpace& space, std::uint64_t seed);

// A seeded d-vector with integer polynomial components of the given degree.
DVector random_dvector(const JetSpace& space, std::uint64_t seed, int degree = 2);

}  // namespace jetgeo
