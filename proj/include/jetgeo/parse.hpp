#pragma once

#include <set>
#include <string>
#include <string_view>

#include "jetgeo/expr.hpp"

namespace jetgeo {

// Grammar (whitespace insignificant):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ('^' ['-'] integer)?
//   atom   := number | name | name '(' expr ')' | '(' expr ')'
// Unary minus binds looser than '^', so "-x^2" is -(x^2).
//
// Names must be in allowed_vars unless they are one of the built-in function
// names followed by '('. Throws MalformedExpression or UnknownVariable.
Expr parse(std::string_view source, const std::set<std::string, std::less<>>& allowed_vars);

}  // namespace jetgeo
