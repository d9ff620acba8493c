#pragma once

#include <compare>
#include <string>

#include "cfentropy/numeric.hpp"

namespace cfentropy {

/// Exact element r + s·√5 of the field Q(√5).
class QSqrt5 {
 public:
  QSqrt5() = default;
  QSqrt5(Rational r, Rational s = Rational(0)) : r_(std::move(r)), s_(std::move(s)) {}
  QSqrt5(int r) : r_(r) {}

  /// The golden ratio (1 + √5)/2.
  static QSqrt5 golden() { return QSqrt5(Rational(1, 2), Rational(1, 2)); }

  const Rational& rational_part() const { return r_; }
  const Rational& sqrt5_part() const { return s_; }

  QSqrt5 conjugate() const { return QSqrt5(r_, -s_); }
  /// r² - 5s², the field norm.
  Rational norm() const { return r_ * r_ - 5 * s_ * s_; }
  int sign() const;
  bool is_zero() const { return r_ == 0 && s_ == 0; }

  QSqrt5& operator+=(const QSqrt5& o);
  QSqrt5& operator-=(const QSqrt5& o);
  QSqrt5& operator*=(const QSqrt5& o);
  QSqrt5& operator/=(const QSqrt5& o);

  friend QSqrt5 operator+(QSqrt5 x, const QSqrt5& y) { return x += y; }
  friend QSqrt5 operator-(QSqrt5 x, const QSqrt5& y) { return x -= y; }
  friend QSqrt5 operator*(QSqrt5 x, const QSqrt5& y) { return x *= y; }
  friend QSqrt5 operator/(QSqrt5 x, const QSqrt5& y) { return x /= y; }
  friend QSqrt5 operator-(const QSqrt5& x) { return QSqrt5(-x.r_, -x.s_); }

  friend bool operator==(const QSqrt5&, const QSqrt5&) = default;
  friend std::strong_ordering operator<=>(const QSqrt5& x, const QSqrt5& y);

  /// Nearest double, accurate to a few ulps.
  double to_double() const;

 private:
  Rational r_{0};
  Rational s_{0};
};

QSqrt5 pow(QSqrt5 base, long long exponent);

std::string to_string(const QSqrt5& x);

}  // namespace cfentropy
