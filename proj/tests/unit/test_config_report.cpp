#include <gtest/gtest.h>

#include "json.hpp"

#include "jetgeo/config.hpp"
#include "jetgeo/error.hpp"
#include "jetgeo/naming.hpp"
#include "jetgeo/parse.hpp"
#include "jetgeo/report.hpp"
#include "random_geometry.hpp"

using namespace jetgeo;

namespace {

const char* kFlat =
    "time t\n"
    "h11 = 1\n"
    "space 2 x1 x2\n"
    "phi[1][1] = 1\n"
    "phi[1][2] = 0\n"
    "phi[2][2] = 1\n";

const char* kSphere =
    "time t\n"
    "h11 = exp(2*t)\n"
    "space 2 x1 x2\n"
    "phi[1][1] = 1\n"
    "phi[1][2] = 0\n"
    "phi[2][2] = sin(x1)^2\n";

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigSyntax& e) {
    return e.line();
  }
  return 0;
}

std::string join(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) s += l + "\n";
  return s;
}

}  // namespace

TEST(Config, FlatScene) {
  SceneConfig c = parse_config(kFlat);
  EXPECT_EQ(c.space.n(), 2);
  ASSERT_TRUE(c.has_metric());
  EXPECT_EQ(c.h->h11, Expr(1));
  EXPECT_EQ(c.phi->phi[0][0], Expr(1));
  EXPECT_TRUE(c.phi->phi[0][1].is_zero());
  EXPECT_EQ(c.phi->phi[1][1], Expr(1));
  EXPECT_FALSE(c.connection.has_value());
}

TEST(Config, SphereScene) {
  SceneConfig c = parse_config(kSphere);
  EXPECT_EQ(c.phi->phi[1][1], parse("sin(x1)^2", c.space.allowed_names()));
  EXPECT_EQ(c.phi->phi[1][0], c.phi->phi[0][1]);
}

TEST(Config, Errors) {
  std::string asym = std::string(kFlat) + "phi[2][1] = x1\n";
  EXPECT_THROW(parse_config(asym), ShapeMismatch);
  EXPECT_EQ(error_line("time t\nspace 2\nh11 = 1 +\n"), 3);
  EXPECT_EQ(error_line("time t\nspace 2\nfoo = 1\n"), 3);
  EXPECT_EQ(error_line("time t\nspace 2\nh11 = 1\nh11 = 2\n"), 4);
  EXPECT_THROW(parse_config("time t\nh11 = 1\n"), MissingSection);
  EXPECT_THROW(parse_config("space 2\nh11 = 1\n"), MissingSection);
  EXPECT_THROW(parse_config("time t\nspace 2\n"), MissingSection);
  EXPECT_THROW(parse_config("time t\nspace 9\nh11 = 1\n"), DimensionTooLarge);
  EXPECT_THROW(parse_config("time t\nspace 2\nh11 = 1\nphi[3][1] = 1\n"), ShapeMismatch);
  EXPECT_THROW(parse_config("time t\nspace 2\nh11 = 1\nGbar = 1\n"), ConfigSyntax);
  EXPECT_EQ(error_line("time t\nspace 2\nh11 = z\n"), 3);
}

TEST(Config, ExplicitConnectionAndExtras) {
  SceneConfig c = parse_config(
      "time t\nspace 2\nGbar = t\nL[1][2][2] = x1*y1_2\nM[2] = -y1_2\n"
      "X1 = t\nXv[2] = y1_1\nDlow[1][2] = 3\nsamples 16\nseed 9\ntol 1e-8\n"
      "param a = 0.5\nbox t 0.5 2\n");
  ASSERT_TRUE(c.connection.has_value());
  EXPECT_EQ(c.connection->Gbar, Expr::variable("t"));
  EXPECT_EQ(c.connection->L[0][1][1], Expr::variable("x1") * Expr::variable("y1_2"));
  EXPECT_EQ(c.connection->nlc.M[1], -Expr::variable("y1_2"));
  EXPECT_TRUE(c.connection->Cv[1][1][1].is_zero());
  ASSERT_TRUE(c.dvector.has_value());
  EXPECT_EQ(c.dvector->Xv[1], Expr::variable("y1_1"));
  EXPECT_EQ((*c.Dlow)[0][1], Expr(3));
  EXPECT_EQ(*c.samples, 16);
  EXPECT_EQ(*c.seed, 9u);
  EXPECT_DOUBLE_EQ(*c.tol, 1e-8);
  EXPECT_EQ(c.space.parameters().size(), 1u);
  ASSERT_EQ(c.space.ranges().size(), 1u);
  EXPECT_DOUBLE_EQ(c.space.ranges()[0].second.lo, 0.5);
}

TEST(Config, ChangeFile) {
  JetSpace sp = JetSpace::standard(2);
  CoordChange ch = parse_change(
      "t_new = 2*t\nx_new[1] = x1\nx_new[2] = x2\nt_old = t/2\nx_old[1] = x1\nx_old[2] = x2\n",
      sp);
  EXPECT_EQ(ch.dt(), Expr(2));
  EXPECT_THROW(parse_change("t_new = 2*t\n", sp), MissingSection);
}

TEST(Config, ConnectionLinesRoundTrip) {
  JetSpace sp = JetSpace::standard(2);
  GammaConnection c = oracle::random_connection(sp, 3);
  SceneConfig back = parse_config(join(connection_config_lines(c)));
  ASSERT_TRUE(back.connection.has_value());
  EXPECT_EQ(back.connection->Gbar, c.Gbar);
  EXPECT_EQ(back.connection->Cv[1][0][1], c.Cv[1][0][1]);
  EXPECT_EQ(back.connection->nlc.N[0][1], c.nlc.N[0][1]);
  Report a = torsion_report(torsion_components(c));
  Report b = torsion_report(torsion_components(*back.connection));
  EXPECT_EQ(render_text(a), render_text(b));
}

TEST(Naming, DecoratedExamples) {
  std::vector<int> i3{0, 1, 0};
  EXPECT_EQ(component_name("T", Signature{kUpSpace, kDownSpace, kDownSpace}, i3), "T[2,1]^[1]");
  std::vector<int> p{1, 0, 1};
  EXPECT_EQ(component_name("P", Signature{kUpVert, kDownTime, kDownVert}, p),
            "P[(1)][1,(2)]^[(2),(1)]");
  std::vector<int> rb{0, 0, 0, 1};
  EXPECT_EQ(component_name("Rbar", Signature{kUpTime, kDownTime, kDownSpace, kDownSpace}, rb),
            "Rbar[1,1,2]^[1]");
  std::vector<int> d2{0, 1};
  EXPECT_EQ(component_name("D", Signature{kUpVert, kDownSpace}, d2), "D[(1)][2]^[(1)]");
  EXPECT_EQ(component_name("d", Signature{kUpVert, kDownVert}, d2), "d[(1)][(2)]^[(1),(1)]");
  EXPECT_EQ(component_name("R", Signature{kUpVert, kDownSpace, kDownSpace}, p),
            "R[(1)][1,2]^[(2)]");
}

TEST(Report, FlatTorsionAllZero) {
  SceneConfig c = parse_config(kFlat);
  Report r = torsion_report(torsion_components(berwald_connection(c.space, *c.h, *c.phi)));
  std::string text = render_text(r);
  std::istringstream is(text);
  std::string line;
  int comps = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    ++comps;
    EXPECT_TRUE(line.ends_with(" = 0")) << line;
  }
  EXPECT_GT(comps, 0);
}

TEST(Report, SphereTorsionLine) {
  SceneConfig c = parse_config(kSphere);
  GammaConnection b = berwald_connection(c.space, *c.h, *c.phi);
  std::string text = render_text(torsion_report(torsion_components(b)));
  Brackets br = bracket_tensors(b.nlc);
  std::string want = "R[(1)][1,2]^[(1)] = " + render(br.Rij[0][0][1]);
  EXPECT_NE(text.find("## Rij\n"), std::string::npos);
  EXPECT_NE(text.find(want + "\n"), std::string::npos) << want;
  EXPECT_FALSE(br.Rij[0][0][1].is_zero());
}

TEST(Report, MachineRoundTrip) {
  SceneConfig c = parse_config(kSphere);
  GammaConnection b = berwald_connection(c.space, *c.h, *c.phi);
  Report r = curvature_report(curvature_components(b));
  r.config = connection_config_lines(b);
  nlohmann::json j = nlohmann::json::parse(render_machine(r));
  EXPECT_EQ(j["report"], "curvature");
  // Every component line of the text report appears in the tree and parses
  // back to the same expression.
  auto names = c.space.allowed_names();
  std::size_t count = 0;
  for (const ReportGroup& g : r.groups)
    for (const ReportLine& l : g.lines) {
      ASSERT_TRUE(j["families"][g.id].contains(l.name)) << l.name;
      std::string e = j["families"][g.id][l.name];
      EXPECT_EQ(e, l.expr);
      EXPECT_EQ(render(parse(e, names)), l.expr);
      ++count;
    }
  EXPECT_GT(count, 0u);
  // The embedded config reloads to the same connection downstream.
  SceneConfig back = parse_config(render_machine(r));
  ASSERT_TRUE(back.connection.has_value());
  EXPECT_EQ(render_text(curvature_report(curvature_components(*back.connection))),
            render_text(curvature_report(curvature_components(b))));
}

TEST(Report, VerdictLines) {
  Report r;
  r.kind = "verify";
  JetSpace sp = JetSpace::standard(2);
  std::vector<std::pair<std::string, Expr>> res = {{"a", Expr()},
                                                   {"b", Expr::variable("x1")}};
  r.add_identities(decide(res, sp, CheckOptions{}));
  EXPECT_FALSE(r.all_pass());
  std::string text = render_text(r);
  EXPECT_NE(text.find("a PASS symbolic"), std::string::npos);
  EXPECT_NE(text.find("b FAIL sampled"), std::string::npos);
  EXPECT_NE(text.find("# result: FAIL 1/2"), std::string::npos) << text;
}

TEST(Report, EmForm) {
  Mat F = em_two_form({{Expr(0), Expr(2)}, {Expr(-4), Expr(0)}});
  std::string text = render_text(em_report(F));
  EXPECT_NE(text.find(" = 3\n"), std::string::npos) << text;
  EXPECT_NE(text.find(" = -3\n"), std::string::npos);
}
