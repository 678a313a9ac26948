#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace uptail {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses "a/b", an integer, or a finite decimal ("0.125", "1e-3") into an
/// exact rational. Decimals are converted digit by digit, never through a
/// binary double.
Rational parse_rational(std::string_view text);

/// Exact rational value of a finite double.
Rational rational_from_double(double x);

/// "num/den" with den > 0; integers are still written "n/1".
std::string to_fraction_string(const Rational& q);

double to_double(const Rational& q);

Rational pow(const Rational& base, unsigned exponent);

inline bool in_open_unit_interval(const Rational& p) { return p > 0 && p < 1; }

}  // namespace uptail
