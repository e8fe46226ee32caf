#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "dgeom/expr.hpp"

namespace dgeom {

/// Parses the expression grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?          right associative
///   primary := integer | '(' expr ')' | ident | ident '(' expr, ... ')'
///            | 'diff' '(' expr (',' slot)+ ')'
///   slot    := ident | '#' integer            (1-based argument slot)
///
/// `n/m` literals are ordinary divisions. Exponents must evaluate to
/// integers. Names of common elementary functions outside the supported
/// set (sqrt, log, sinh, ...) are rejected; any other `ident(...)` is an
/// undefined function application. Returns the unnormalized tree.
Expr parse(std::string_view text);

/// Deterministic canonical text. The output of print(normalize(e)) parses
/// back to the same normal form.
std::string print(const Expr& e);

inline std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << print(e); }

}  // namespace dgeom
