#include <ostream>
#include <string>

#include "jetgeo/expr.hpp"

namespace jetgeo {

namespace {

std::string render_atom(const Atom& a) {
  switch (a->kind) {
    case AtomNode::Kind::Variable:
      return a->name;
    case AtomNode::Kind::Call:
      return std::string(func_name(a->fn)) + "(" + render(a->arg) + ")";
    case AtomNode::Kind::SumBase:
      return "(" + render(a->arg) + ")";
  }
  return {};
}

std::string render_power(const Atom& a, int exp) {
  std::string s = render_atom(a);
  if (exp != 1) s += "^" + std::to_string(exp);
  return s;
}

// Renders |coeff| * monomial; the sign is emitted by the caller.
std::string render_term_magnitude(const Term& t) {
  std::string num;
  const std::int64_t n = t.coeff.num() < 0 ? -t.coeff.num() : t.coeff.num();
  bool have_positive = false;
  for (const auto& f : t.factors) {
    if (f.exp <= 0) continue;
    if (have_positive) num += "*";
    num += render_power(f.base, f.exp);
    have_positive = true;
  }
  std::string out;
  if (!have_positive) {
    out = std::to_string(n);
  } else if (n != 1) {
    out = std::to_string(n) + "*" + num;
  } else {
    out = num;
  }
  if (t.coeff.den() != 1) out += "/" + std::to_string(t.coeff.den());
  for (const auto& f : t.factors) {
    if (f.exp >= 0) continue;
    out += "/" + render_power(f.base, -f.exp);
  }
  return out;
}

}  // namespace

std::string render(const Expr& e) {
  const auto& terms = e.terms();
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms) {
    const bool neg = t.coeff.is_negative();
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    out += render_term_magnitude(t);
    first = false;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << render(e); }

}  // namespace jetgeo
