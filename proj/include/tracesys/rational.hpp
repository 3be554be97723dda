#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace tracesys {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Accepts integers ("3", "-2"), fractions ("1/3") and plain decimals
/// ("0.25", "-1.5e-3"); decimals convert exactly. Throws SchemaError.
Rational parse_rational(std::string_view text);

/// Canonical form: "3", "-1/4".
std::string to_string(const Rational& q);
std::string to_string(const BigInt& n);

/// Shortest round-trip-safe rendering with 17 significant digits.
std::string to_decimal(double x);

}  // namespace tracesys
