#include "jetgeo/parse.hpp"

#include <cctype>

#include "jetgeo/error.hpp"

namespace jetgeo {

namespace {

class Parser {
 public:
  Parser(std::string_view src, const std::set<std::string, std::less<>>& vars)
      : src_(src), vars_(vars) {}

  Expr run() {
    skip();
    if (pos_ >= src_.size()) fail("empty expression");
    Expr e = expr();
    skip();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw MalformedExpression(what + " at column " + std::to_string(pos_ + 1) +
                              " in '" + std::string(src_) + "'");
  }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr e = term();
    while (true) {
      if (accept('+')) {
        e += term();
      } else if (accept('-')) {
        e -= term();
      } else {
        return e;
      }
    }
  }

  // A factor is kept as base^k so that a divisor like (a + b)^2 becomes the
  // sum base (a + b)^-2 instead of the reciprocal of the expanded square.
  struct Powered {
    Expr base;
    int k = 1;
    Expr value() const { return k == 1 ? base : base.pow(k); }
  };

  Expr term() {
    Expr e = factor().value();
    while (true) {
      if (accept('*')) {
        e *= factor().value();
      } else if (accept('/')) {
        Powered d = factor();
        if (d.base.is_zero()) fail("division by zero");
        e *= d.base.pow(-d.k);
      } else {
        return e;
      }
    }
  }

  Powered factor() {
    if (accept('-')) return {-factor().value(), 1};
    Expr base = atom();
    if (accept('^')) {
      bool neg = accept('-');
      skip();
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      if (start == pos_) fail("expected integer exponent");
      if (pos_ - start > 6) fail("exponent too large");
      int k = std::stoi(std::string(src_.substr(start, pos_ - start)));
      if (neg) {
        if (base.is_zero()) fail("negative power of zero");
        k = -k;
      }
      return {std::move(base), k};
    }
    return {std::move(base), 1};
  }

  Expr atom() {
    skip();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
        ++pos_;
      return Expr(Rational::from_decimal(std::string(src_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_'))
        ++pos_;
      std::string name(src_.substr(start, pos_ - start));
      skip();
      if (pos_ < src_.size() && src_[pos_] == '(') {
        auto f = func_from_name(name);
        if (!f) throw UnknownVariable("unknown function '" + name + "'");
        ++pos_;
        Expr arg = expr();
        if (!accept(')')) fail("expected ')'");
        try {
          return Expr::call(*f, arg);
        } catch (const EvaluationSingularity& e) {
          fail(e.what());
        }
      }
      if (vars_.find(name) == vars_.end())
        throw UnknownVariable("unknown variable '" + name + "'");
      return Expr::variable(name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  const std::set<std::string, std::less<>>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view source, const std::set<std::string, std::less<>>& allowed_vars) {
  return Parser(source, allowed_vars).run();
}

}  // namespace jetgeo
