#pragma once

#include <string>

#include "wgeo/ratfunc.hpp"
#include "wgeo/vars.hpp"

namespace wgeo {

// Expression grammar over a Walker variable universe:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := primary ('^' ['-'] INT)?
//   primary:= INT | 'v' | 'u' | 'x<k>' | '(' expr ')'
// Whitespace-insensitive. Division and '^' with negative exponents produce
// rational functions.
RatFunc parse_expr(const std::string& src, const Vars& vars);

// canonical serialization; parse(to_string(f)) reproduces f bit-exactly
std::string to_string(const Polynomial& p, const Vars& vars);
std::string to_string(const RatFunc& f, const Vars& vars);

} // namespace wgeo
