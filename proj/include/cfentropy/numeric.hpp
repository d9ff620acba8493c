#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace cfentropy {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (rationals, flags).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses "p/q", "p", or "-p/q". Whitespace is not accepted.
Rational parse_rational(std::string_view text);

std::string to_string(const BigInt& x);
std::string to_string(const Rational& x);

double to_double(const Rational& x);

/// Exact rational value of a finite double (every double is dyadic).
Rational from_double(double x);

std::size_t hash_value(const BigInt& x) noexcept;

/// Fixed-notation decimal with `digits` significant digits; deterministic
/// and locale-independent.
std::string format_significant(double x, int digits = 12);

}  // namespace cfentropy
