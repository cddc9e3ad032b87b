#pragma once

// Number literals:
//   decimal   "1.5", "-0.25", "3", "1e-3"   (exact)
//   rational  "5/8"
//   algebraic "root:[c0,c1,...,ck]@[a,b]"  the unique root of sum c_i z^i in [a,b]

#include <string>
#include <string_view>

#include "betadyn/number_field.hpp"

namespace betadyn {

Rational parse_rational(std::string_view text);

/// Rational literals and algebraic literals whose root turns out rational
/// come back as plain rationals; otherwise the generator of a new field.
FieldElement parse_literal(std::string_view text);

/// Inverse of parse_literal for rationals and field generators.
std::string format_literal(const FieldElement& x);

}  // namespace betadyn
