#pragma once

// The ten torsion and fifteen curvature d-tensors of a Gamma-linear
// connection. Every family is a DTensor whose signature lists the upper index
// first and then the lower indices in their decorated order; families with a
// time upper index carry it as a slot of extent 1.

#include <string>
#include <vector>

#include "jetgeo/dtensor.hpp"

namespace jetgeo {

struct TorsionSet {
  DTensor Tbar1j;  // Tbar^1_1j          (1 | 1, j)
  DTensor T1j;     // T^r_1j             (r | 1, j)
  DTensor Tij;     // T^r_ij             (r | i, j)
  DTensor Pbar;    // Pbar^1_1(j)        (1 | 1, (j))
  DTensor Pij;     // P^r_i(j)           (r | i, (j))
  DTensor S;       // S_(1)(i)(j)^(r)    ((r) | (i), (j))
  DTensor P1j;     // P_(1)1(j)^(r)      ((r) | 1, (j))
  DTensor Pijv;    // P_(1)i(j)^(r)      ((r) | i, (j))
  DTensor R1j;     // R_(1)1j^(r)        ((r) | 1, j)
  DTensor Rij;     // R_(1)ij^(r)        ((r) | i, j)
};

struct CurvatureSet {
  DTensor Rbar11k, Ril1k, Rv1;
  DTensor Rbar1jk, Rlijk, Rvjk;
  DTensor Pbar11k, Pli1k, Pv11k;
  DTensor Pbar1jk, Plijk, Pvjk;
  DTensor Sbar1jk, Slijk, Svijk;
};

// A named family, for reports and bulk checks.
struct Family {
  std::string id;    // stable key, e.g. "T1j"
  std::string base;  // letter used in component names, e.g. "T"
  const DTensor* tensor;
};

std::vector<Family> families(const TorsionSet& t);
std::vector<Family> families(const CurvatureSet& c);

TorsionSet torsion_components(const GammaConnection& conn);
CurvatureSet curvature_components(const GammaConnection& conn);
// Same result, given the torsion set of conn.
CurvatureSet curvature_components(const GammaConnection& conn, const TorsionSet& t);

// The C blocks viewed as d-tensors with their decorated signatures:
// Cbar (1 | 1, (k)), C (k | i, (j)), Cv ((k) | (i), (j)).
DTensor cbar_tensor(const GammaConnection& conn);
DTensor c_tensor(const GammaConnection& conn);
DTensor cv_tensor(const GammaConnection& conn);

}  // namespace jetgeo
