// jetgeo command-line front end.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "jetgeo/config.hpp"
#include "jetgeo/error.hpp"
#include "jetgeo/parse.hpp"
#include "jetgeo/report.hpp"

using namespace jetgeo;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Common {
  std::string config;
  std::string what;
  std::string out;
  bool machine = false;
};

struct VerifyOpts {
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string change;
};

std::uint64_t env_seed() {
  const char* s = std::getenv("JETGEO_SEED");
  if (!s || !*s) return 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0' || s[0] == '-') throw ConfigSyntax(0, "JETGEO_SEED must be a non-negative integer");
  return v;
}

CheckOptions resolve(const SceneConfig& cfg, const VerifyOpts& v) {
  CheckOptions o;
  o.samples = v.samples ? *v.samples : cfg.samples.value_or(32);
  o.seed = v.seed ? *v.seed : cfg.seed ? *cfg.seed : env_seed();
  o.tol = v.tol ? *v.tol : cfg.tol.value_or(kDefaultZeroTol);
  return o;
}

void add_run_notes(Report& r, const CheckOptions& o) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "seed %llu samples %d tol %.3e",
                static_cast<unsigned long long>(o.seed), o.samples, o.tol);
  r.notes.emplace_back(buf);
}

GammaConnection pick_connection(const SceneConfig& cfg, const std::string& which) {
  if (which == "berwald" || (which.empty() && cfg.has_metric())) {
    if (!cfg.has_metric()) throw MissingSection("a Berwald connection needs a metric pair");
    return berwald_connection(cfg.space, *cfg.h, *cfg.phi);
  }
  if (!cfg.connection) throw MissingSection("the scene has no explicit connection");
  return *cfg.connection;
}

NonlinearConnection pick_nlc(const SceneConfig& cfg, const std::string& which) {
  if (which.empty() && cfg.has_metric()) return canonical_nlc(cfg.space, *cfg.h, *cfg.phi);
  return pick_connection(cfg, which).nlc;
}

// t~ = 2t + 1, x~ = x.
CoordChange default_change(const JetSpace& space) {
  Vec x;
  for (int i = 0; i < space.n(); ++i) x.push_back(space.x(i));
  return change_of_coords(space, space.t().scaled(2) + Expr(1), x,
                          (space.t() - Expr(1)).scaled(Rational(1, 2)), x);
}

void emit(const Report& r, const Common& c) {
  const std::string body = c.machine ? render_machine(r) : render_text(r);
  if (c.out.empty()) {
    std::cout << body;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw MissingSection("cannot write '" + c.out + "'");
  f << body;
}

int run_compute(const Common& c, const std::string& which) {
  SceneConfig cfg = load_config(c.config);
  Report r;
  if (c.what == "christoffel") {
    if (!cfg.has_metric()) throw MissingSection("christoffel needs a metric pair");
    r = christoffel_report(cfg.space, *cfg.h, *cfg.phi);
  } else if (c.what == "nlc") {
    r = nlc_report(pick_nlc(cfg, which));
  } else if (c.what == "connection") {
    r = connection_report(pick_connection(cfg, which));
  } else if (c.what == "torsion") {
    r = torsion_report(torsion_components(pick_connection(cfg, which)));
  } else if (c.what == "curvature") {
    r = curvature_report(curvature_components(pick_connection(cfg, which)));
  } else if (c.what == "deflection") {
    r = deflection_report(deflection_tensors(pick_connection(cfg, which)));
  } else {
    if (!cfg.Dlow) throw MissingSection("em needs Dlow[i][j] entries");
    r = em_report(em_two_form(*cfg.Dlow));
  }
  emit(r, c);
  return kExitPass;
}

IdentityReport covariance_for(const SceneConfig& cfg, const CoordChange& ch,
                              const CheckOptions& o) {
  if (cfg.has_metric()) return covariance_check(*cfg.h, *cfg.phi, ch, o);
  return covariance_check(*cfg.connection, ch, o);
}

int run_verify(const Common& c, const VerifyOpts& v) {
  SceneConfig cfg = load_config(c.config);
  CheckOptions o = resolve(cfg, v);
  Report r;
  r.kind = "verify " + c.what;
  add_run_notes(r, o);
  const bool all = c.what == "all";
  GammaConnection conn = pick_connection(cfg, "");
  if (all || c.what == "ricci") {
    DVector X = cfg.dvector ? *cfg.dvector : random_dvector(cfg.space, o.seed);
    r.notes.push_back(cfg.dvector ? "d-vector from scene" : "d-vector seeded");
    r.add_identities(ricci_check(conn, X, o));
  }
  if (all || c.what == "deflection") r.add_identities(deflection_identities_check(conn, o));
  if (all || c.what == "brackets") {
    std::vector<Expr> fs;
    for (std::uint64_t k = 0; k < 5; ++k) fs.push_back(random_scalar(cfg.space, o.seed + k));
    r.add_identities(bracket_check(conn.nlc, fs, o));
  }
  if (all || c.what == "covariance") {
    CoordChange ch = v.change.empty() ? default_change(cfg.space) : load_change(v.change, cfg.space);
    r.notes.push_back(v.change.empty() ? "change t~ = 2*t + 1" : "change from file");
    r.add_identities(covariance_for(cfg, ch, o));
  }
  emit(r, c);
  return r.all_pass() ? kExitPass : kExitFail;
}

int run_transform(const Common& c, const VerifyOpts& v) {
  SceneConfig cfg = load_config(c.config);
  CoordChange ch = load_change(v.change, cfg.space);
  if (c.what == "nlc") {
    emit(nlc_report(transform_nlc(pick_nlc(cfg, ""), ch)), c);
    return kExitPass;
  }
  if (c.what == "connection") {
    emit(connection_report(transform_connection(pick_connection(cfg, ""), ch)), c);
    return kExitPass;
  }
  CheckOptions o = resolve(cfg, v);
  Report r;
  r.kind = "transform check";
  add_run_notes(r, o);
  r.add_identities(covariance_for(cfg, ch, o));
  emit(r, c);
  return r.all_pass() ? kExitPass : kExitFail;
}

void common_options(CLI::App* sub, Common& c, std::vector<std::string> whats) {
  sub->add_option("--config", c.config, "scene file")->required();
  sub->add_option("--what", c.what, "what to produce")
      ->required()
      ->check(CLI::IsMember(std::move(whats)));
  sub->add_option("--out", c.out, "write the report to PATH");
  sub->add_flag("--machine", c.machine, "JSON report");
}

void verify_options(CLI::App* sub, VerifyOpts& v) {
  sub->add_option("--samples", v.samples, "sample points per residual")
      ->check(CLI::Range(1, 100000));
  sub->add_option("--seed", v.seed, "sampling seed");
  sub->add_option("--tol", v.tol, "zero tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jetgeo: geometry of the 1-jet space J1(R, M)"};
  app.require_subcommand(1);
  Common c;
  VerifyOpts v;
  std::string which;

  CLI::App* compute = app.add_subcommand("compute", "compute geometric objects");
  common_options(compute, c,
                 {"christoffel", "nlc", "connection", "torsion", "curvature", "deflection", "em"});
  compute->add_option("--connection", which, "connection source")
      ->check(CLI::IsMember({"berwald", "file"}));

  CLI::App* verify = app.add_subcommand("verify", "verify identities");
  common_options(verify, c, {"ricci", "deflection", "brackets", "covariance", "all"});
  verify_options(verify, v);
  verify->add_option("--change", v.change, "coordinate change file for covariance");

  CLI::App* transform = app.add_subcommand("transform", "apply a coordinate change");
  common_options(transform, c, {"nlc", "connection", "check"});
  transform->add_option("--change", v.change, "coordinate change file")->required();
  verify_options(transform, v);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (compute->parsed()) return run_compute(c, which);
    if (verify->parsed()) return run_verify(c, v);
    return run_transform(c, v);
  } catch (const InternalInconsistency& e) {
    std::cerr << "jetgeo: error: " << e.kind() << ": " << e.what() << "\n";
    return kExitFail;
  } catch (const Error& e) {
    std::cerr << "jetgeo: error: " << e.kind() << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "jetgeo: error: " << e.what() << "\n";
    return kExitInput;
  }
}
