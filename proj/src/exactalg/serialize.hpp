#pragma once

#include <stdexcept>
#include <string>

#include "exactalg/poly.hpp"
#include "exactalg/ratfunc.hpp"
#include "json.hpp"

namespace qsh {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

std::string qToString(const Q& c);
std::string monoToString(const Mono& m);  // "1" for the empty monomial
std::string polyToString(const Poly& p);

// Canonical text form: "(num)" or "(num)/(den)" with the reduced pair.
// Round-trips bit-exactly through parseRat.
std::string ratToString(const RatFunc& r);

nlohmann::json polyToJson(const Poly& p);
nlohmann::json ratToJson(const RatFunc& r);
Poly polyFromJson(const nlohmann::json& j);
RatFunc ratFromJson(const nlohmann::json& j);

// Expression parser over rationals, parameters and indexed variables.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ('^' exponent)?
//   atom   := integer | ident | ident '[' int (',' int)? ']' | '(' expr ')'
//
// 'x', 'w', 'z' take indices (node or node,row); any other identifier must
// name a registered parameter. Exponents are integers, or a parenthesized
// linear form like (3/2), (-1/2+g), (2*g1-1); identifiers inside an exponent
// denote formal symbols and are registered on first use. A non-integer
// exponent requires the base to reduce to a coefficient-one monomial.
RatFunc parseRat(const std::string& s);
Poly parsePoly(const std::string& s);  // parseRat, then the denominator must be 1

}  // namespace qsh
