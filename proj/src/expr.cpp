#include "jetgeo/expr.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "jetgeo/error.hpp"

namespace jetgeo {

namespace {

constexpr std::array<std::string_view, 8> kFuncNames = {
    "sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh"};

// FNV-1a style mixing; deterministic across platforms so that the canonical
// order (which falls back to hashes) does not depend on the standard library.
std::uint64_t mix(std::uint64_t h, std::uint64_t v) noexcept {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0x100000001b3ULL;
}

std::uint64_t hash_string(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t hash_terms(const std::vector<Term>& terms) noexcept {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (const auto& t : terms) {
    h = mix(h, static_cast<std::uint64_t>(t.coeff.num()));
    h = mix(h, static_cast<std::uint64_t>(t.coeff.den()));
    for (const auto& f : t.factors) {
      h = mix(h, f.base->hash);
      h = mix(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(f.exp)));
    }
    h = mix(h, 0xfeedULL);
  }
  return h;
}

const std::shared_ptr<const ExprNode>& zero_node() {
  static const std::shared_ptr<const ExprNode> node = [] {
    auto n = std::make_shared<ExprNode>();
    n->hash = hash_terms(n->terms);
    return n;
  }();
  return node;
}

std::vector<std::string> merge_free(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

int compare_factors(const std::vector<Factor>& a,
                    const std::vector<Factor>& b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a[i].base, b[i].base);
    if (c != 0) return c;
    if (a[i].exp != b[i].exp) return a[i].exp < b[i].exp ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

std::vector<Factor> multiply_monomials(const std::vector<Factor>& a,
                                       const std::vector<Factor>& b) {
  std::vector<Factor> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i].base, b[j].base);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      int e = a[i].exp + b[j].exp;
      if (e != 0) out.push_back({a[i].base, e});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

Atom make_variable_atom(std::string name) {
  auto a = std::make_shared<AtomNode>();
  a->kind = AtomNode::Kind::Variable;
  a->hash = mix(hash_string(name), 1);
  a->free = {name};
  a->name = std::move(name);
  return a;
}

Atom make_call_atom(Func f, Expr arg) {
  auto a = std::make_shared<AtomNode>();
  a->kind = AtomNode::Kind::Call;
  a->fn = f;
  a->hash = mix(mix(arg.hash(), static_cast<std::uint64_t>(f) + 17), 2);
  a->free = arg.free_variables();
  a->arg = std::move(arg);
  return a;
}

Atom make_sum_atom(Expr base) {
  auto a = std::make_shared<AtomNode>();
  a->kind = AtomNode::Kind::SumBase;
  a->hash = mix(base.hash(), 3);
  a->free = base.free_variables();
  a->arg = std::move(base);
  return a;
}

bool is_perfect_square(std::int64_t v, std::int64_t& root) {
  if (v < 0) return false;
  auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
  for (std::int64_t c = std::max<std::int64_t>(0, r - 1); c <= r + 1; ++c) {
    if (c * c == v) {
      root = c;
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view func_name(Func f) noexcept {
  return kFuncNames[static_cast<std::size_t>(f)];
}

std::optional<Func> func_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kFuncNames.size(); ++i)
    if (kFuncNames[i] == name) return static_cast<Func>(i);
  return std::nullopt;
}

bool AtomNode::depends_on(std::string_view var) const noexcept {
  if (kind == Kind::Variable) return name == var;
  return std::binary_search(free.begin(), free.end(), var,
                            [](std::string_view x, std::string_view y) {
                              return x < y;
                            });
}

int compare(const Atom& a, const Atom& b) noexcept {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->kind == AtomNode::Kind::Variable) {
    int c = a->name.compare(b->name);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (a->hash != b->hash) return a->hash < b->hash ? -1 : 1;
  if (a->kind == AtomNode::Kind::Call && a->fn != b->fn)
    return a->fn < b->fn ? -1 : 1;
  return compare(a->arg, b->arg);
}

// ---------------------------------------------------------------------------
// TermCollector

void TermCollector::add(Term t) {
  if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
}

void TermCollector::add(const Expr& e) {
  for (const auto& t : e.terms()) terms_.push_back(t);
}

void TermCollector::add_product(const Term& a, const Term& b) {
  Rational c = a.coeff * b.coeff;
  if (c.is_zero()) return;
  terms_.push_back({c, multiply_monomials(a.factors, b.factors)});
}

Expr TermCollector::finish() {
  if (terms_.empty()) return Expr();
  std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) {
    return compare_factors(x.factors, y.factors) < 0;
  });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && compare_factors(out.back().factors, t.factors) == 0) {
      out.back().coeff += t.coeff;
      if (out.back().coeff.is_zero()) out.pop_back();
    } else {
      out.push_back(std::move(t));
    }
  }
  terms_.clear();
  if (out.empty()) return Expr();
  auto node = std::make_shared<ExprNode>();
  node->hash = hash_terms(out);
  node->terms = std::move(out);
  return Expr(std::shared_ptr<const ExprNode>(std::move(node)));
}

// ---------------------------------------------------------------------------
// Expr basics

Expr::Expr() : node_(zero_node()) {}

Expr::Expr(Rational c) : node_(zero_node()) {
  if (c.is_zero()) return;
  TermCollector tc;
  tc.add(Term{c, {}});
  *this = tc.finish();
}

Expr Expr::variable(std::string name) {
  return from_atom(make_variable_atom(std::move(name)));
}

Expr Expr::from_atom(Atom a, int exp) {
  if (exp == 0) return Expr(1);
  if (a->kind == AtomNode::Kind::SumBase && exp > 0) return a->arg.pow(exp);
  TermCollector tc;
  tc.add(Term{Rational(1), {Factor{std::move(a), exp}}});
  return tc.finish();
}

Expr Expr::call(Func f, const Expr& arg) {
  if (auto c = arg.constant_value()) {
    if (c->is_zero()) {
      switch (f) {
        case Func::Sin:
        case Func::Tan:
        case Func::Sinh:
        case Func::Sqrt:
          return Expr(0);
        case Func::Cos:
        case Func::Cosh:
        case Func::Exp:
          return Expr(1);
        case Func::Log:
          throw EvaluationSingularity("log(0)");
      }
    }
    if (f == Func::Log && c->is_one()) return Expr(0);
    if (f == Func::Log && c->is_negative())
      throw EvaluationSingularity("log of negative constant");
    if (f == Func::Sqrt) {
      if (c->is_negative())
        throw EvaluationSingularity("sqrt of negative constant");
      std::int64_t rn = 0;
      std::int64_t rd = 0;
      if (is_perfect_square(c->num(), rn) && is_perfect_square(c->den(), rd))
        return Expr(Rational(rn, rd));
    }
  }
  return from_atom(make_call_atom(f, arg));
}

const std::vector<Term>& Expr::terms() const noexcept { return node_->terms; }

std::uint64_t Expr::hash() const noexcept { return node_->hash; }

bool Expr::is_one() const noexcept {
  const auto& t = terms();
  return t.size() == 1 && t[0].factors.empty() && t[0].coeff.is_one();
}

std::optional<Rational> Expr::constant_value() const noexcept {
  const auto& t = terms();
  if (t.empty()) return Rational(0);
  if (t.size() == 1 && t[0].factors.empty()) return t[0].coeff;
  return std::nullopt;
}

NodeKind Expr::kind() const noexcept {
  const auto& t = terms();
  if (t.empty() || (t.size() == 1 && t[0].factors.empty()))
    return NodeKind::Constant;
  if (t.size() > 1) return NodeKind::Sum;
  const Term& term = t[0];
  if (term.coeff == Rational(-1)) return NodeKind::Negation;
  if (!term.coeff.is_one() || term.factors.size() > 1) return NodeKind::Product;
  const Factor& f = term.factors[0];
  if (f.exp != 1) return NodeKind::Power;
  return f.base->kind == AtomNode::Kind::Variable ? NodeKind::Variable
                                                  : NodeKind::Function;
}

std::vector<std::string> Expr::free_variables() const {
  std::vector<std::string> out;
  for (const auto& t : terms())
    for (const auto& f : t.factors) out = merge_free(out, f.base->free);
  return out;
}

bool Expr::depends_on(std::string_view var) const noexcept {
  for (const auto& t : terms())
    for (const auto& f : t.factors)
      if (f.base->depends_on(var)) return true;
  return false;
}

bool operator==(const Expr& a, const Expr& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

int compare(const Expr& a, const Expr& b) noexcept {
  if (a.node_ == b.node_) return 0;
  const auto& x = a.terms();
  const auto& y = b.terms();
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare_factors(x[i].factors, y[i].factors);
    if (c != 0) return c;
    if (x[i].coeff != y[i].coeff) return x[i].coeff < y[i].coeff ? -1 : 1;
  }
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Arithmetic

Expr Expr::scaled(const Rational& c) const {
  if (c.is_zero() || is_zero()) return Expr();
  if (c.is_one()) return *this;
  auto node = std::make_shared<ExprNode>();
  node->terms = terms();
  for (auto& t : node->terms) t.coeff *= c;
  node->hash = hash_terms(node->terms);
  return Expr(std::shared_ptr<const ExprNode>(std::move(node)));
}

Expr Expr::operator-() const { return scaled(Rational(-1)); }

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const auto& x = a.terms();
  const auto& y = b.terms();
  std::vector<Term> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() && j < y.size()) {
    int c = compare_factors(x[i].factors, y[j].factors);
    if (c < 0) {
      out.push_back(x[i++]);
    } else if (c > 0) {
      out.push_back(y[j++]);
    } else {
      Rational s = x[i].coeff + y[j].coeff;
      if (!s.is_zero()) out.push_back({s, x[i].factors});
      ++i;
      ++j;
    }
  }
  for (; i < x.size(); ++i) out.push_back(x[i]);
  for (; j < y.size(); ++j) out.push_back(y[j]);
  if (out.empty()) return Expr();
  TermCollector tc;  // already sorted; finish() just builds the node
  for (auto& t : out) tc.add(std::move(t));
  return tc.finish();
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (auto c = a.constant_value()) return b.scaled(*c);
  if (auto c = b.constant_value()) return a.scaled(*c);
  TermCollector tc;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) tc.add_product(x, y);
  return tc.finish();
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw EvaluationSingularity("division by literal zero");
  if (a.is_zero()) return Expr();
  return a * b.pow(-1);
}

Expr& Expr::operator+=(const Expr& o) { return *this = *this + o; }
Expr& Expr::operator-=(const Expr& o) { return *this = *this - o; }
Expr& Expr::operator*=(const Expr& o) { return *this = *this * o; }
Expr& Expr::operator/=(const Expr& o) { return *this = *this / o; }

Expr Expr::pow(int k) const {
  if (k == 0) return Expr(1);
  if (k == 1) return *this;
  if (k > 0) {
    Expr base = *this;
    Expr out(1);
    unsigned e = static_cast<unsigned>(k);
    while (e > 0) {
      if (e & 1U) out *= base;
      e >>= 1U;
      if (e > 0) base *= base;
    }
    return out;
  }
  if (is_zero()) throw EvaluationSingularity("negative power of literal zero");
  const auto& t = terms();
  if (t.size() == 1) {
    // Invert a single term: coefficient and every factor exponent. Sum bases
    // that end up with a positive exponent are multiplied out.
    Expr out(t[0].coeff.pow(k));
    std::vector<Factor> kept;
    for (const auto& f : t[0].factors) {
      int e = f.exp * k;
      if (f.base->kind == AtomNode::Kind::SumBase && e > 0) {
        out *= f.base->arg.pow(e);
      } else {
        kept.push_back({f.base, e});
      }
    }
    if (!kept.empty()) {
      TermCollector tc;
      tc.add(Term{Rational(1), std::move(kept)});
      out *= tc.finish();
    }
    return out;
  }
  // Multi-term base: normalize so the leading term has coefficient 1.
  Rational lead = t[0].coeff;
  Expr normalized = scaled(Rational(1) / lead);
  return from_atom(make_sum_atom(normalized), k).scaled(lead.pow(k));
}

namespace fn {
Expr sin(const Expr& e) { return Expr::call(Func::Sin, e); }
Expr cos(const Expr& e) { return Expr::call(Func::Cos, e); }
Expr tan(const Expr& e) { return Expr::call(Func::Tan, e); }
Expr exp(const Expr& e) { return Expr::call(Func::Exp, e); }
Expr log(const Expr& e) { return Expr::call(Func::Log, e); }
Expr sqrt(const Expr& e) { return Expr::call(Func::Sqrt, e); }
Expr sinh(const Expr& e) { return Expr::call(Func::Sinh, e); }
Expr cosh(const Expr& e) { return Expr::call(Func::Cosh, e); }
}  // namespace fn

// ---------------------------------------------------------------------------
// Differentiation

namespace {

Expr atom_derivative(const Atom& a, std::string_view var);

// d f(u) / du, as an expression in u.
Expr outer_derivative(Func f, const Expr& u) {
  switch (f) {
    case Func::Sin:
      return fn::cos(u);
    case Func::Cos:
      return -fn::sin(u);
    case Func::Tan:
      return Expr(1) + fn::tan(u).pow(2);
    case Func::Exp:
      return fn::exp(u);
    case Func::Log:
      return u.pow(-1);
    case Func::Sqrt:
      return fn::sqrt(u).pow(-1).scaled(Rational(1, 2));
    case Func::Sinh:
      return fn::cosh(u);
    case Func::Cosh:
      return fn::sinh(u);
  }
  return Expr();
}

Expr atom_derivative(const Atom& a, std::string_view var) {
  switch (a->kind) {
    case AtomNode::Kind::Variable:
      return a->name == var ? Expr(1) : Expr(0);
    case AtomNode::Kind::Call: {
      Expr inner = differentiate(a->arg, var);
      if (inner.is_zero()) return Expr();
      return outer_derivative(a->fn, a->arg) * inner;
    }
    case AtomNode::Kind::SumBase:
      return differentiate(a->arg, var);
  }
  return Expr();
}

}  // namespace

Expr differentiate(const Expr& e, std::string_view var) {
  TermCollector out;
  for (const auto& term : e.terms()) {
    for (std::size_t i = 0; i < term.factors.size(); ++i) {
      const Factor& f = term.factors[i];
      if (!f.base->depends_on(var)) continue;
      Expr da = atom_derivative(f.base, var);
      if (da.is_zero()) continue;
      Term rest{term.coeff * Rational(f.exp), term.factors};
      if (f.exp == 1) {
        rest.factors.erase(rest.factors.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        rest.factors[i].exp -= 1;
      }
      for (const auto& dt : da.terms()) out.add_product(rest, dt);
    }
  }
  return out.finish();
}

// ---------------------------------------------------------------------------
// Rebuilding

namespace {

template <class AtomMap>
Expr rebuild(const Expr& e, AtomMap&& map_atom) {
  Expr out;
  for (const auto& t : e.terms()) {
    Expr prod(t.coeff);
    for (const auto& f : t.factors) prod *= map_atom(f.base).pow(f.exp);
    out += prod;
  }
  return out;
}

}  // namespace

Expr simplify(const Expr& e) {
  return rebuild(e, [](const Atom& a) -> Expr {
    switch (a->kind) {
      case AtomNode::Kind::Variable:
        return Expr::from_atom(a);
      case AtomNode::Kind::Call:
        return Expr::call(a->fn, simplify(a->arg));
      case AtomNode::Kind::SumBase:
        return simplify(a->arg);
    }
    return Expr();
  });
}

const Expr* Substitution::find(std::string_view name) const noexcept {
  for (const auto& [k, v] : map)
    if (k == name) return &v;
  return nullptr;
}

Expr substitute(const Expr& e, const Substitution& s) {
  return rebuild(e, [&](const Atom& a) -> Expr {
    bool touched = false;
    for (const auto& [k, v] : s.map)
      if (a->depends_on(k)) {
        touched = true;
        break;
      }
    if (!touched) return Expr::from_atom(a);
    switch (a->kind) {
      case AtomNode::Kind::Variable:
        return *s.find(a->name);
      case AtomNode::Kind::Call:
        return Expr::call(a->fn, substitute(a->arg, s));
      case AtomNode::Kind::SumBase:
        return substitute(a->arg, s);
    }
    return Expr();
  });
}

}  // namespace jetgeo
