#include "dialect/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>

#include "dialect/error.hpp"

namespace dialect {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// cpp_int reads a leading 0 as an octal prefix, so digit strings must be
// trimmed before construction.
BigInt decimal_digits_to_int(const std::string& digits) {
  std::size_t first = digits.find_first_not_of('0');
  if (first == std::string::npos) return BigInt(0);
  return BigInt(digits.substr(first));
}

}  // namespace

Rational rational_from_string(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw ParseError("empty number");

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s.erase(0, 1);
  }

  auto fail = [&] { throw ParseError("malformed number: '" + text + "'"); };

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) fail();
    BigInt d = decimal_digits_to_int(den);
    if (d == 0) throw ParseError("zero denominator: '" + text + "'");
    Rational r(decimal_digits_to_int(num), d);
    return negative ? -r : r;
  }

  // decimal with optional exponent
  long exponent = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    std::string etext = s.substr(epos + 1);
    s.erase(epos);
    if (etext.empty()) fail();
    char* end = nullptr;
    exponent = std::strtol(etext.c_str(), &end, 10);
    if (*end != '\0') fail();
  }

  std::string digits = s;
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    digits = s.substr(0, dot) + s.substr(dot + 1);
    exponent -= static_cast<long>(s.size() - dot - 1);
  }
  if (!all_digits(digits)) fail();

  Rational r(decimal_digits_to_int(digits), 1);
  BigInt ten = 10;
  if (exponent > 0)
    r *= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(exponent)), 1);
  else if (exponent < 0)
    r /= Rational(boost::multiprecision::pow(ten, static_cast<unsigned>(-exponent)), 1);
  return negative ? -r : r;
}

std::string rational_to_string(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string rational_to_display(const Rational& r) {
  if (is_integer(r)) return numerator(r).str();
  // Finite decimal exactly when the denominator is of the form 2^a 5^b.
  BigInt den = denominator(r);
  int twos = 0, fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return rational_to_string(r);
  int shift = twos > fives ? twos : fives;
  if (shift > 12) return rational_to_string(r);
  BigInt scaled = numerator(r) * boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift)) /
                  denominator(r);
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string digits = scaled.str();
  if (static_cast<int>(digits.size()) <= shift)
    digits.insert(0, static_cast<std::size_t>(shift + 1 - static_cast<int>(digits.size())), '0');
  digits.insert(digits.size() - static_cast<std::size_t>(shift), ".");
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
  return (neg ? "-" : "") + digits;
}

std::int64_t to_int64_checked(const Rational& r) {
  if (!is_integer(r)) throw ContractError("value " + rational_to_string(r) + " is not an integer");
  BigInt n = numerator(r);
  if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min())
    throw ContractError("value " + n.str() + " does not fit in 64 bits");
  return n.convert_to<std::int64_t>();
}

}  // namespace dialect
