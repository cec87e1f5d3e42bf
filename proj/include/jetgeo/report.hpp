#pragma once

// Canonical text and machine (JSON) reports.
//
// Text: a "# jetgeo KIND" header, then per family a "## ID" line followed by
// "NAME = EXPR" lines, then identity verdict lines and a result line.
// Machine: the same content as a JSON tree keyed by family id and component
// name, plus the loadable scene lines under "config".

#include <string>
#include <vector>

#include "jetgeo/curvtor.hpp"
#include "jetgeo/identities.hpp"

namespace jetgeo {

struct ReportLine {
  std::string name;
  std::string expr;
};

struct ReportGroup {
  std::string id;
  std::vector<ReportLine> lines;
};

struct Report {
  std::string kind;
  std::vector<std::string> notes;  // "# " lines after the header
  std::vector<ReportGroup> groups;
  std::vector<IdentityResult> identities;
  bool has_verdicts = false;
  std::vector<std::string> config;

  bool all_pass() const noexcept;
  void add_identities(const IdentityReport& r);
};

std::string render_text(const Report& r);
std::string render_machine(const Report& r);

ReportGroup tensor_group(const std::string& id, const std::string& base, const DTensor& T);

Report christoffel_report(const JetSpace& space, const TimeMetric& h, const SpatialMetric& phi);
Report nlc_report(const NonlinearConnection& nlc);
Report connection_report(const GammaConnection& conn);
Report torsion_report(const TorsionSet& t);
Report curvature_report(const CurvatureSet& c);
Report deflection_report(const DeflectionSet& d);
Report em_report(const Mat& F);

}  // namespace jetgeo
