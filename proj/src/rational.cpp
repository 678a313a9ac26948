#include "uptail/rational.hpp"

#include <cctype>
#include <cmath>

#include "uptail/errors.hpp"

namespace uptail {

namespace {

BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

Rational parse_decimal(std::string_view text, std::size_t base_offset) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  BigInt digits = 0;
  long scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      any_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw ParseError("expected a number", base_offset + i);
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("malformed exponent", base_offset + i);
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > 4000) throw ParseError("exponent out of range", base_offset + i);
    }
    if (exp_negative) exponent = -exponent;
  }
  if (i != text.size()) throw ParseError("unexpected character", base_offset + i);
  long net = exponent - scale;
  Rational q = net >= 0 ? Rational(digits * pow10(static_cast<unsigned>(net)))
                        : Rational(digits, pow10(static_cast<unsigned>(-net)));
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty number", 0);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text, 0);
  Rational num = parse_decimal(text.substr(0, slash), 0);
  Rational den = parse_decimal(text.substr(slash + 1), slash + 1);
  if (den == 0) throw ParseError("zero denominator", slash + 1);
  return num / den;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53 significant bits: scale the mantissa to an integer.
  auto m = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational q = Rational(BigInt(m));
  if (exp > 0) {
    BigInt s = 1;
    s <<= exp;
    q *= s;
  } else if (exp < 0) {
    BigInt s = 1;
    s <<= -exp;
    q /= s;
  }
  return q;
}

std::string to_fraction_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

}  // namespace uptail
