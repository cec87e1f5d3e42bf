#include "jetgeo/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "jetgeo/error.hpp"
#include "jetgeo/parse.hpp"
#include "json.hpp"

namespace jetgeo {

namespace {

struct Line {
  int number;
  std::string text;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
    std::string t = trim(raw);
    if (!t.empty()) out.push_back({number, std::move(t)});
    pos = end + 1;
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> w;
  for (std::string x; in >> x;) w.push_back(x);
  return w;
}

bool is_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return !func_from_name(s).has_value();
}

double number(const Line& l, const std::string& s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    throw ConfigSyntax(l.number, "expected a number, got '" + s + "'");
  return v;
}

// "G[1][2]" -> ("G", {0, 1}).
struct Key {
  std::string name;
  std::vector<int> idx;
};

Key parse_key(const Line& l, const std::string& lhs) {
  Key k;
  std::size_t p = 0;
  while (p < lhs.size() && (std::isalnum(static_cast<unsigned char>(lhs[p])) || lhs[p] == '_'))
    ++p;
  k.name = lhs.substr(0, p);
  if (k.name.empty()) throw ConfigSyntax(l.number, "expected a key before '='");
  while (p < lhs.size()) {
    if (lhs[p] != '[') throw ConfigSyntax(l.number, "malformed key '" + lhs + "'");
    std::size_t close = lhs.find(']', p);
    if (close == std::string::npos) throw ConfigSyntax(l.number, "missing ']' in '" + lhs + "'");
    std::string inner = trim(std::string_view(lhs).substr(p + 1, close - p - 1));
    int v = 0;
    auto [q, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), v);
    if (inner.empty() || ec != std::errc() || q != inner.data() + inner.size())
      throw ConfigSyntax(l.number, "malformed index in '" + lhs + "'");
    k.idx.push_back(v - 1);
    p = close + 1;
  }
  return k;
}

struct Assignment {
  Line line;
  Key key;
  std::string rhs;
};

Expr parse_rhs(const Assignment& a, const JetSpace& space) {
  try {
    return parse(a.rhs, space.allowed_names());
  } catch (const MalformedExpression& e) {
    throw ConfigSyntax(a.line.number, e.what());
  } catch (const UnknownVariable& e) {
    throw ConfigSyntax(a.line.number, e.what());
  }
}

void check_indices(const Assignment& a, std::size_t count, int n) {
  if (a.key.idx.size() != count)
    throw ShapeMismatch("line " + std::to_string(a.line.number) + ": '" + a.key.name +
                        "' takes " + std::to_string(count) + " indices");
  for (int v : a.key.idx)
    if (v < 0 || v >= n)
      throw ShapeMismatch("line " + std::to_string(a.line.number) + ": index out of range 1.." +
                          std::to_string(n));
}

const std::map<std::string, std::size_t, std::less<>>& block_arity() {
  static const std::map<std::string, std::size_t, std::less<>> m = {
      {"Gbar", 0}, {"G", 2},  {"Gv", 2}, {"Lbar", 1}, {"L", 3}, {"Lv", 3},
      {"Cbar", 1}, {"C", 3},  {"Cv", 3}, {"M", 1},    {"N", 2}};
  return m;
}

std::string maybe_machine(std::string_view text) {
  std::size_t p = 0;
  while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
  if (p >= text.size() || text[p] != '{') return std::string(text);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigSyntax(1, std::string("invalid machine report: ") + e.what());
  }
  if (!j.contains("config") || !j["config"].is_array())
    throw MissingSection("machine report has no config section");
  std::string out;
  for (const auto& l : j["config"]) {
    if (!l.is_string()) throw ConfigSyntax(1, "config lines must be strings");
    out += l.get<std::string>();
    out += '\n';
  }
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingSection("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SceneConfig parse_config(std::string_view raw) {
  const std::string text = maybe_machine(raw);
  const std::vector<Line> lines = split_lines(text);

  std::optional<std::string> time;
  std::optional<int> n;
  std::vector<std::string> space_names, fiber_names;
  std::vector<std::pair<std::string, double>> params;
  std::vector<std::tuple<int, std::string, Interval>> boxes;
  std::vector<Assignment> assigns;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;

  for (const Line& l : lines) {
    auto w = words(l.text);
    const std::string& head = w[0];
    if (head == "time" && l.text.find('=') == std::string::npos) {
      if (w.size() != 2 || !is_name(w[1])) throw ConfigSyntax(l.number, "expected 'time NAME'");
      if (time) throw ConfigSyntax(l.number, "duplicate time declaration");
      time = w[1];
    } else if (head == "space" && l.text.find('=') == std::string::npos) {
      if (w.size() < 2) throw ConfigSyntax(l.number, "expected 'space N [names]'");
      if (n) throw ConfigSyntax(l.number, "duplicate space declaration");
      int v = static_cast<int>(number(l, w[1]));
      if (std::to_string(v) != w[1] || v < 1)
        throw ConfigSyntax(l.number, "space dimension must be a positive integer");
      if (v > kMaxDimension)
        throw DimensionTooLarge("dimension " + std::to_string(v) + " exceeds " +
                                std::to_string(kMaxDimension));
      n = v;
      if (w.size() > 2) {
        if (static_cast<int>(w.size()) - 2 != v)
          throw ShapeMismatch("line " + std::to_string(l.number) + ": expected " + w[1] +
                              " spatial names");
        space_names.assign(w.begin() + 2, w.end());
      } else {
        for (int i = 1; i <= v; ++i) space_names.push_back("x" + std::to_string(i));
      }
      for (const auto& s : space_names)
        if (!is_name(s)) throw ConfigSyntax(l.number, "invalid coordinate name '" + s + "'");
    } else if (head == "fiber" && l.text.find('=') == std::string::npos) {
      if (!fiber_names.empty()) throw ConfigSyntax(l.number, "duplicate fiber declaration");
      fiber_names.assign(w.begin() + 1, w.end());
      if (fiber_names.empty()) throw ConfigSyntax(l.number, "expected fiber names");
      for (const auto& s : fiber_names)
        if (!is_name(s)) throw ConfigSyntax(l.number, "invalid coordinate name '" + s + "'");
    } else if (head == "param") {
      std::size_t eq = l.text.find('=');
      std::string name = eq == std::string::npos ? "" : trim(std::string_view(l.text).substr(5, eq - 5));
      std::string value = eq == std::string::npos ? "" : trim(std::string_view(l.text).substr(eq + 1));
      if (!is_name(name) || value.empty())
        throw ConfigSyntax(l.number, "expected 'param NAME = VALUE'");
      params.emplace_back(name, number(l, value));
    } else if (head == "box" && l.text.find('=') == std::string::npos) {
      if (w.size() != 4) throw ConfigSyntax(l.number, "expected 'box NAME LO HI'");
      boxes.emplace_back(l.number, w[1], Interval{number(l, w[2]), number(l, w[3])});
    } else if ((head == "samples" || head == "seed" || head == "tol") &&
               l.text.find('=') == std::string::npos) {
      if (w.size() != 2) throw ConfigSyntax(l.number, "expected '" + head + " VALUE'");
      if (head == "tol") {
        tol = number(l, w[1]);
        if (!(*tol > 0)) throw ConfigSyntax(l.number, "tol must be positive");
      } else {
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(w[1].data(), w[1].data() + w[1].size(), v);
        if (ec != std::errc() || p != w[1].data() + w[1].size())
          throw ConfigSyntax(l.number, head + " must be a non-negative integer");
        if (head == "samples") {
          if (v < 1 || v > 100000) throw ConfigSyntax(l.number, "samples must be in 1..100000");
          samples = static_cast<int>(v);
        } else {
          seed = v;
        }
      }
    } else {
      std::size_t eq = l.text.find('=');
      if (eq == std::string::npos)
        throw ConfigSyntax(l.number, "unknown directive '" + head + "'");
      Assignment a{l, parse_key(l, trim(std::string_view(l.text).substr(0, eq))),
                   trim(std::string_view(l.text).substr(eq + 1))};
      if (a.rhs.empty()) throw ConfigSyntax(l.number, "missing expression after '='");
      assigns.push_back(std::move(a));
    }
  }
  if (!time) throw MissingSection("missing 'time' declaration");
  if (!n) throw MissingSection("missing 'space' declaration");
  if (fiber_names.empty())
    for (int i = 1; i <= *n; ++i) fiber_names.push_back("y1_" + std::to_string(i));
  if (static_cast<int>(fiber_names.size()) != *n)
    throw ShapeMismatch("expected " + std::to_string(*n) + " fiber names");

  JetSpace space(*n, *time, space_names, fiber_names);
  const auto coords = space.coordinates();
  for (const auto& [k, v] : params) {
    if (std::find(coords.begin(), coords.end(), k) != coords.end())
      throw ShapeMismatch("parameter '" + k + "' clashes with a coordinate");
    space.add_parameter(k, v);
  }
  for (const auto& [line, name, iv] : boxes) {
    try {
      space.set_range(name, iv);
    } catch (const Error& e) {
      throw ConfigSyntax(line, e.what());
    }
  }

  SceneConfig cfg{space, {}, {}, {}, {}, {}, samples, seed, tol};
  const int dim = *n;
  std::optional<Expr> h11;
  Mat phi = zero_mat(dim);
  std::vector<std::vector<int>> phi_line(dim, std::vector<int>(dim, 0));
  bool any_phi = false;
  GammaConnection conn = GammaConnection::zero(space);
  int first_metric = 0;
  int first_block = 0;
  DVector X{Expr(), zero_vec(dim), zero_vec(dim)};
  bool any_x = false;
  Mat dlow = zero_mat(dim);
  bool any_dlow = false;
  std::map<std::string, int, std::less<>> seen;

  for (const Assignment& a : assigns) {
    std::string full = a.key.name;
    for (int v : a.key.idx) full += "[" + std::to_string(v + 1) + "]";
    if (auto [it, fresh] = seen.emplace(full, a.line.number); !fresh)
      throw ConfigSyntax(a.line.number, "duplicate entry '" + full + "' (first on line " +
                                            std::to_string(it->second) + ")");
    const std::string& k = a.key.name;
    const auto& I = a.key.idx;
    if (k == "h11" || k == "phi") {
      if (!first_metric) first_metric = a.line.number;
      if (k == "h11") {
        check_indices(a, 0, dim);
        h11 = parse_rhs(a, space);
      } else {
        check_indices(a, 2, dim);
        Expr e = parse_rhs(a, space);
        const int i = I[0];
        const int j = I[1];
        if (phi_line[j][i] && i != j && !(phi[j][i] == e))
          throw ShapeMismatch("line " + std::to_string(a.line.number) + ": phi[" +
                              std::to_string(i + 1) + "][" + std::to_string(j + 1) +
                              "] differs from phi[" + std::to_string(j + 1) + "][" +
                              std::to_string(i + 1) + "]");
        phi[i][j] = e;
        phi[j][i] = e;
        phi_line[i][j] = a.line.number;
        any_phi = true;
      }
    } else if (auto b = block_arity().find(k); b != block_arity().end()) {
      if (!first_block) first_block = a.line.number;
      check_indices(a, b->second, dim);
      Expr e = parse_rhs(a, space);
      if (k == "Gbar") conn.Gbar = e;
      else if (k == "G") conn.G[I[0]][I[1]] = e;
      else if (k == "Gv") conn.Gv[I[0]][I[1]] = e;
      else if (k == "Lbar") conn.Lbar[I[0]] = e;
      else if (k == "L") conn.L[I[0]][I[1]][I[2]] = e;
      else if (k == "Lv") conn.Lv[I[0]][I[1]][I[2]] = e;
      else if (k == "Cbar") conn.Cbar[I[0]] = e;
      else if (k == "C") conn.C[I[0]][I[1]][I[2]] = e;
      else if (k == "Cv") conn.Cv[I[0]][I[1]][I[2]] = e;
      else if (k == "M") conn.nlc.M[I[0]] = e;
      else conn.nlc.N[I[0]][I[1]] = e;
    } else if (k == "X1") {
      check_indices(a, 0, dim);
      X.X1 = parse_rhs(a, space);
      any_x = true;
    } else if (k == "X" || k == "Xv") {
      check_indices(a, 1, dim);
      (k == "X" ? X.Xi : X.Xv)[I[0]] = parse_rhs(a, space);
      any_x = true;
    } else if (k == "Dlow") {
      check_indices(a, 2, dim);
      dlow[I[0]][I[1]] = parse_rhs(a, space);
      any_dlow = true;
    } else {
      throw ConfigSyntax(a.line.number, "unknown key '" + k + "'");
    }
  }

  if (first_metric && first_block)
    throw ConfigSyntax(std::max(first_metric, first_block),
                       "a scene holds either a metric pair or an explicit connection");
  if (first_metric) {
    if (!h11) throw MissingSection("metric pair without 'h11'");
    if (!any_phi) throw MissingSection("metric pair without 'phi'");
    cfg.h = make_time_metric(space, *h11);
    cfg.phi = make_spatial_metric(space, phi);
  } else if (first_block) {
    cfg.connection = std::move(conn);
  } else {
    throw MissingSection("neither a metric pair nor a connection is given");
  }
  if (any_x) cfg.dvector = std::move(X);
  if (any_dlow) cfg.Dlow = std::move(dlow);
  return cfg;
}

SceneConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

CoordChange parse_change(std::string_view text, const JetSpace& space) {
  const int n = space.n();
  std::optional<Expr> t_new, t_old;
  std::vector<std::optional<Expr>> x_new(n), x_old(n);
  for (const Line& l : split_lines(text)) {
    std::size_t eq = l.text.find('=');
    if (eq == std::string::npos) throw ConfigSyntax(l.number, "expected 'KEY = EXPR'");
    Assignment a{l, parse_key(l, trim(std::string_view(l.text).substr(0, eq))),
                 trim(std::string_view(l.text).substr(eq + 1))};
    if (a.rhs.empty()) throw ConfigSyntax(l.number, "missing expression after '='");
    const std::string& k = a.key.name;
    std::optional<Expr>* slot = nullptr;
    if (k == "t_new" || k == "t_old") {
      check_indices(a, 0, n);
      slot = k == "t_new" ? &t_new : &t_old;
    } else if (k == "x_new" || k == "x_old") {
      check_indices(a, 1, n);
      slot = &(k == "x_new" ? x_new : x_old)[a.key.idx[0]];
    } else {
      throw ConfigSyntax(l.number, "unknown change key '" + k + "'");
    }
    if (slot->has_value()) throw ConfigSyntax(l.number, "duplicate entry '" + k + "'");
    *slot = parse_rhs(a, space);
  }
  if (!t_new || !t_old) throw MissingSection("change needs t_new and t_old");
  Vec xn, xo;
  for (int i = 0; i < n; ++i) {
    if (!x_new[i] || !x_old[i])
      throw MissingSection("change needs x_new[" + std::to_string(i + 1) + "] and x_old[" +
                           std::to_string(i + 1) + "]");
    xn.push_back(*x_new[i]);
    xo.push_back(*x_old[i]);
  }
  return change_of_coords(space, *t_new, xn, *t_old, xo);
}

CoordChange load_change(const std::string& path, const JetSpace& space) {
  return parse_change(read_file(path), space);
}

std::vector<std::string> space_config_lines(const JetSpace& space) {
  std::vector<std::string> out;
  out.push_back("time " + space.time_name());
  std::string s = "space " + std::to_string(space.n());
  for (const auto& x : space.space_names()) s += " " + x;
  out.push_back(s);
  std::string f = "fiber";
  for (const auto& y : space.fiber_names()) f += " " + y;
  out.push_back(f);
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& [k, v] : space.parameters()) out.push_back("param " + k + " = " + num(v));
  for (const auto& [k, iv] : space.ranges())
    out.push_back("box " + k + " " + num(iv.lo) + " " + num(iv.hi));
  return out;
}

std::vector<std::string> connection_config_lines(const GammaConnection& c) {
  std::vector<std::string> out = space_config_lines(c.space());
  const int n = c.n();
  auto add = [&](const std::string& key, std::initializer_list<int> idx, const Expr& e) {
    std::string k = key;
    for (int v : idx) k += "[" + std::to_string(v + 1) + "]";
    out.push_back(k + " = " + render(e));
  };
  add("Gbar", {}, c.Gbar);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) add("G", {a, b}, c.G[a][b]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) add("Gv", {a, b}, c.Gv[a][b]);
  for (int a = 0; a < n; ++a) add("Lbar", {a}, c.Lbar[a]);
  for (const auto& [key, arr] : {std::pair<const char*, const Arr3*>{"L", &c.L}, {"Lv", &c.Lv}})
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) add(key, {a, b, d}, (*arr)[a][b][d]);
  for (int a = 0; a < n; ++a) add("Cbar", {a}, c.Cbar[a]);
  for (const auto& [key, arr] : {std::pair<const char*, const Arr3*>{"C", &c.C}, {"Cv", &c.Cv}})
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d) add(key, {a, b, d}, (*arr)[a][b][d]);
  for (int a = 0; a < n; ++a) add("M", {a}, c.nlc.M[a]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) add("N", {a, b}, c.nlc.N[a][b]);
  return out;
}

}  // namespace jetgeo
