#include "cfentropy/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

namespace cfentropy {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("not a rational number: '" + std::string(whole) + "'");
  BigInt value{std::string(s)};
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const BigInt num = parse_integer(text.substr(0, slash), text);
  const auto den_text = text.substr(slash + 1);
  if (!all_digits(den_text)) throw ParseError("bad denominator in '" + std::string(text) + "'");
  const BigInt den(std::string{den_text});
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw Error("from_double: non-finite value");
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);  // x = mantissa * 2^exponent
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  BigInt num(scaled);
  exponent -= 53;
  if (exponent >= 0) return Rational(num << exponent);
  return Rational(num, BigInt(1) << (-exponent));
}

std::size_t hash_value(const BigInt& x) noexcept {
  const auto& backend = x.backend();
  std::size_t h = x.sign() < 0 ? 0x9e3779b97f4a7c15ULL : 0;
  const auto* limbs = backend.limbs();
  for (std::size_t i = 0; i < backend.size(); ++i) {
    h ^= std::hash<unsigned long long>{}(static_cast<unsigned long long>(limbs[i])) + 0x9e3779b97f4a7c15ULL + (h << 6) +
         (h >> 2);
  }
  return h;
}

std::string format_significant(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  int decimals = digits - 1;
  if (x != 0.0) {
    const int magnitude = static_cast<int>(std::floor(std::log10(std::fabs(x))));
    decimals = std::max(0, digits - 1 - magnitude);
  }
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, x);
  return buffer;
}

}  // namespace cfentropy
