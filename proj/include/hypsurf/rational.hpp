#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <variant>

namespace hypsurf {

using Rational = mpq_class;

/// A parsed scalar: exact when written as an integer, a plain decimal, or
/// "p/q"; floating when written with an exponent.
using Scalar = std::variant<Rational, double>;

/// Parses "p/q", "-12", "0.125" (exact) or "1e-3" (floating).
/// Throws std::invalid_argument on malformed input.
Scalar parse_scalar(std::string_view text);

/// Exact value of a finite double.
Rational exact_from_double(double v);

std::string to_string(const Rational& q);

/// Round toward -inf / +inf to an integer.
mpz_class floor_of(const Rational& q);
mpz_class ceil_of(const Rational& q);

}  // namespace hypsurf
