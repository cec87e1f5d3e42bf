#include "jetgeo/report.hpp"

#include <cstdio>

#include "jetgeo/config.hpp"
#include "jetgeo/naming.hpp"
#include "json.hpp"

namespace jetgeo {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

DTensor from_vec(int n, const Signature& sig, const Vec& v) { return DTensor(n, sig, v); }

DTensor from_mat(int n, const Signature& sig, const Mat& m) {
  std::vector<Expr> c;
  for (const auto& row : m)
    for (const auto& e : row) c.push_back(e);
  return DTensor(n, sig, std::move(c));
}

DTensor from_arr3(int n, const Signature& sig, const Arr3& a) {
  std::vector<Expr> c;
  for (const auto& m : a)
    for (const auto& row : m)
      for (const auto& e : row) c.push_back(e);
  return DTensor(n, sig, std::move(c));
}

// M[i] and N[i][j] have their upper index first, matching the signatures.
void add_nlc_groups(Report& r, const NonlinearConnection& nlc) {
  const int n = nlc.space.n();
  r.groups.push_back(tensor_group("M", "M", from_vec(n, signatures::M, nlc.M)));
  r.groups.push_back(tensor_group("N", "N", from_mat(n, signatures::N, nlc.N)));
}

}  // namespace

bool Report::all_pass() const noexcept {
  for (const auto& e : identities)
    if (!e.verdict.zero) return false;
  return true;
}

void Report::add_identities(const IdentityReport& r) {
  has_verdicts = true;
  for (const auto& e : r.entries) identities.push_back(e);
}

ReportGroup tensor_group(const std::string& id, const std::string& base, const DTensor& T) {
  ReportGroup g{id, {}};
  for (std::size_t f = 0; f < T.size(); ++f)
    g.lines.push_back({component_name(base, T, f), render(T.components()[f])});
  return g;
}

std::string render_text(const Report& r) {
  std::string out = "# jetgeo " + r.kind + "\n";
  for (const auto& n : r.notes) out += "# " + n + "\n";
  for (const auto& g : r.groups) {
    out += "## " + g.id + "\n";
    for (const auto& l : g.lines) out += l.name + " = " + l.expr + "\n";
  }
  if (r.has_verdicts) {
    std::size_t failed = 0;
    for (const auto& e : r.identities) {
      const auto& v = e.verdict;
      failed += v.zero ? 0 : 1;
      out += e.name + " " + (v.zero ? "PASS" : "FAIL") + " " +
             (v.symbolic ? "symbolic" : "sampled") + " max_residual=" + sci(v.max_residual) +
             " samples=" + std::to_string(v.samples) + "\n";
    }
    out += "# result: " + std::string(failed ? "FAIL" : "PASS") + " " +
           std::to_string(r.identities.size() - failed) + "/" +
           std::to_string(r.identities.size()) + "\n";
  }
  return out;
}

std::string render_machine(const Report& r) {
  nlohmann::ordered_json j;
  j["report"] = r.kind;
  j["notes"] = r.notes;
  nlohmann::ordered_json fam = nlohmann::ordered_json::object();
  for (const auto& g : r.groups) {
    nlohmann::ordered_json comp = nlohmann::ordered_json::object();
    for (const auto& l : g.lines) comp[l.name] = l.expr;
    fam[g.id] = std::move(comp);
  }
  j["families"] = std::move(fam);
  if (r.has_verdicts) {
    nlohmann::ordered_json ids = nlohmann::ordered_json::array();
    std::size_t failed = 0;
    for (const auto& e : r.identities) {
      const auto& v = e.verdict;
      failed += v.zero ? 0 : 1;
      nlohmann::ordered_json item;
      item["name"] = e.name;
      item["pass"] = v.zero;
      item["path"] = v.symbolic ? "symbolic" : "sampled";
      item["max_residual"] = v.max_residual;
      item["samples"] = v.samples;
      item["seed"] = v.seed;
      ids.push_back(std::move(item));
    }
    j["identities"] = std::move(ids);
    j["result"] = {{"pass", failed == 0},
                   {"checked", r.identities.size()},
                   {"failed", failed}};
  }
  if (!r.config.empty()) j["config"] = r.config;
  return j.dump(2) + "\n";
}

Report christoffel_report(const JetSpace& space, const TimeMetric& h, const SpatialMetric& phi) {
  const int n = space.n();
  Report r{"christoffel", {}, {}, {}, false, {}};
  DTensor H(n, signatures::H, {christoffel_time(space, h)});
  r.groups.push_back(tensor_group("H", "H", H));
  r.groups.push_back(
      tensor_group("gamma", "gamma", from_arr3(n, signatures::gamma, christoffel_spatial(space, phi))));
  Arr4 rr = spatial_riemann(space, phi);
  std::vector<Expr> c;
  for (const auto& a : rr)
    for (const auto& b : a)
      for (const auto& row : b)
        for (const auto& e : row) c.push_back(e);
  r.groups.push_back(tensor_group("r", "r", DTensor(n, signatures::riemann, std::move(c))));
  return r;
}

Report nlc_report(const NonlinearConnection& nlc) {
  Report r{"nlc", {}, {}, {}, false, {}};
  add_nlc_groups(r, nlc);
  GammaConnection c = GammaConnection::zero(nlc.space);
  c.nlc = nlc;
  r.config = connection_config_lines(c);
  return r;
}

Report connection_report(const GammaConnection& conn) {
  const int n = conn.n();
  Report r{"connection", {}, {}, {}, false, {}};
  r.groups.push_back(tensor_group("Gbar", "Gbar", DTensor(n, signatures::Gbar, {conn.Gbar})));
  r.groups.push_back(tensor_group("G", "G", from_mat(n, signatures::G, conn.G)));
  r.groups.push_back(tensor_group("Gv", "Gv", from_mat(n, signatures::Gv, conn.Gv)));
  r.groups.push_back(tensor_group("Lbar", "Lbar", from_vec(n, signatures::Lbar, conn.Lbar)));
  r.groups.push_back(tensor_group("L", "L", from_arr3(n, signatures::L, conn.L)));
  r.groups.push_back(tensor_group("Lv", "Lv", from_arr3(n, signatures::Lv, conn.Lv)));
  r.groups.push_back(tensor_group("Cbar", "Cbar", from_vec(n, signatures::Cbar, conn.Cbar)));
  r.groups.push_back(tensor_group("C", "C", from_arr3(n, signatures::C, conn.C)));
  r.groups.push_back(tensor_group("Cv", "Cv", from_arr3(n, signatures::Cv, conn.Cv)));
  add_nlc_groups(r, conn.nlc);
  r.config = connection_config_lines(conn);
  return r;
}

Report torsion_report(const TorsionSet& t) {
  Report r{"torsion", {}, {}, {}, false, {}};
  for (const auto& f : families(t)) r.groups.push_back(tensor_group(f.id, f.base, *f.tensor));
  return r;
}

Report curvature_report(const CurvatureSet& c) {
  Report r{"curvature", {}, {}, {}, false, {}};
  for (const auto& f : families(c)) r.groups.push_back(tensor_group(f.id, f.base, *f.tensor));
  return r;
}

Report deflection_report(const DeflectionSet& d) {
  Report r{"deflection", {}, {}, {}, false, {}};
  r.groups.push_back(tensor_group("Dbar", "Dbar", d.Dbar));
  r.groups.push_back(tensor_group("D", "D", d.D));
  r.groups.push_back(tensor_group("d", "d", d.d));
  return r;
}

Report em_report(const Mat& F) {
  const int n = static_cast<int>(F.size());
  Report r{"em", {}, {}, {}, false, {}};
  r.groups.push_back(tensor_group("F", "F", from_mat(n, signatures::F, F)));
  return r;
}

}  // namespace jetgeo
