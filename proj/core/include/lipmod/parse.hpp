#pragma once

#include <map>
#include <string>
#include <string_view>

#include "lipmod/bipoly.hpp"
#include "lipmod/rational.hpp"

namespace lipmod {

using Bindings = std::map<std::string, Rational, std::less<>>;

/// Parses a polynomial over {+, -, *, ^, parentheses}. Variables come from
/// `names`; other identifiers are looked up in `bindings`. Literals are
/// integers or p/q. Throws ParseError on syntax errors, unbound identifiers
/// and exponents above 2^16.
BiPoly parse_poly(std::string_view text, const Bindings& bindings = {},
                  const VarNames& names = {"x", "y"});

}  // namespace lipmod
