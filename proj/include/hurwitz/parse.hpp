#pragma once

// Number literals: "a+bi" with integer, decimal or p/q components, an
// optional parenthesised numerator over a denominator ("(3-4i)/25",
// "(3-4i)/(2+i)"). Integer and p/q components give an exact value; any
// decimal component turns the whole literal into a BigComplex.

#include <string_view>
#include <variant>

#include "hurwitz/gaussian.hpp"

namespace hurwitz {

using Number = std::variant<GaussianRational, BigComplex>;

// Throws ParseError.
Number parse_number(std::string_view text, mpfr_prec_t prec = BigFloat::kDefaultPrecision);

}  // namespace hurwitz
