#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace dialect {

// All counts and probabilities are exact. Empirical counts are integers,
// model probabilities are rationals; both live in this one type so that
// decomposition arithmetic never rounds.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// Parses "42", "-3", "7/20", "0.35", "1e-3", "2.5e2". Throws ParseError on
// anything else.
Rational rational_from_string(const std::string& text);

// "n" when integral, otherwise "n/d".
std::string rational_to_string(const Rational& r);

// Shortest decimal or plain fraction for human-facing tables: integers print
// bare, dyadic-decimal values print as decimals, the rest as "n/d".
std::string rational_to_display(const Rational& r);

std::int64_t to_int64_checked(const Rational& r);

}  // namespace dialect
