#pragma once

// Immutable symbolic expressions in expanded normal form.
//
// Every Expr is a sum of terms, each term a rational coefficient times a
// monomial: a sorted list of (atom, nonzero integer exponent) factors. Atoms are
// variables, function applications and "sum bases" (a multi-term sum raised to
// a negative power). Positive powers of sums are always multiplied out, so two
// polynomial expressions are equal as values iff they are equal structurally.
// Rational functions and transcendental terms are canonical only up to the
// ordering of their atoms; deciding zero for those is left to sampling
// (see zero_test.hpp).

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetgeo/rational.hpp"

namespace jetgeo {

enum class Func : std::uint8_t { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh };

std::string_view func_name(Func f) noexcept;
std::optional<Func> func_from_name(std::string_view name) noexcept;

class Expr;
struct AtomNode;
using Atom = std::shared_ptr<const AtomNode>;

struct Factor {
  Atom base;
  int exp = 1;
};

struct Term {
  Rational coeff;
  std::vector<Factor> factors;  // sorted by atom order, exponents nonzero
};

// Coarse structural classification used for inspection and printing.
enum class NodeKind {
  Constant,
  Variable,
  Function,
  Power,
  Product,
  Negation,
  Sum,
};

struct ExprNode;

class Expr {
 public:
  Expr();  // literal 0
  Expr(Rational c);  // NOLINT(implicit)
  Expr(std::int64_t c) : Expr(Rational(c)) {}  // NOLINT(implicit)
  Expr(int c) : Expr(Rational(c)) {}  // NOLINT(implicit)

  static Expr variable(std::string name);
  static Expr call(Func f, const Expr& arg);
  static Expr from_atom(Atom a, int exp = 1);

  const std::vector<Term>& terms() const noexcept;

  bool is_zero() const noexcept { return terms().empty(); }
  bool is_one() const noexcept;
  std::optional<Rational> constant_value() const noexcept;
  NodeKind kind() const noexcept;
  std::uint64_t hash() const noexcept;

  // Sorted, duplicate free.
  std::vector<std::string> free_variables() const;
  bool depends_on(std::string_view var) const noexcept;

  Expr operator-() const;
  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  Expr& operator/=(const Expr& o);
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);

  Expr pow(int k) const;
  Expr scaled(const Rational& c) const;

  friend bool operator==(const Expr& a, const Expr& b) noexcept;
  // Total order on canonical expressions.
  friend int compare(const Expr& a, const Expr& b) noexcept;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  friend class TermCollector;

  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  std::vector<Term> terms;
  std::uint64_t hash = 0;
};

struct AtomNode {
  enum class Kind : std::uint8_t { Variable, Call, SumBase };

  Kind kind = Kind::Variable;
  std::string name;  // Variable
  Func fn = Func::Sin;  // Call
  Expr arg;  // Call argument, or the normalized sum for SumBase
  std::uint64_t hash = 0;
  std::vector<std::string> free;  // sorted free variables

  bool depends_on(std::string_view var) const noexcept;
};

int compare(const Expr& a, const Expr& b) noexcept;
int compare(const Atom& a, const Atom& b) noexcept;

// Accumulates terms in any order and produces the canonical sum.
class TermCollector {
 public:
  void add(Term t);
  void add(const Expr& e);
  // Adds coeff * m1 * m2 (monomials merged).
  void add_product(const Term& a, const Term& b);
  Expr finish();

 private:
  std::vector<Term> terms_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);

namespace fn {
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr tan(const Expr& e);
Expr exp(const Expr& e);
Expr log(const Expr& e);
Expr sqrt(const Expr& e);
Expr sinh(const Expr& e);
Expr cosh(const Expr& e);
}  // namespace fn

// Exact partial derivative. Differentiating with respect to a variable the
// expression does not contain yields 0.
Expr differentiate(const Expr& e, std::string_view var);

// Rebuilds e bottom-up through the canonicalizing constructors. Values built by
// the public API are already canonical, so this is the identity on them; it is
// idempotent in general.
Expr simplify(const Expr& e);

// Replaces variables by expressions. Unmapped variables stay.
struct Substitution {
  std::vector<std::pair<std::string, Expr>> map;
  const Expr* find(std::string_view name) const noexcept;
};
Expr substitute(const Expr& e, const Substitution& s);

// Canonical text; parse(render(e)) == e.
std::string render(const Expr& e);
std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace jetgeo
