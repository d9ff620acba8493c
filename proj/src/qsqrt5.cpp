#include "cfentropy/qsqrt5.hpp"

#include <cmath>

namespace cfentropy {

int QSqrt5::sign() const {
  const int rs = r_.sign();
  const int ss = s_.sign();
  if (rs == 0) return ss;
  if (ss == 0 || rs == ss) return rs;
  // Opposite signs: the larger of r² and 5s² wins.
  const Rational diff = r_ * r_ - 5 * s_ * s_;
  return diff.sign() * rs;
}

QSqrt5& QSqrt5::operator+=(const QSqrt5& o) {
  r_ += o.r_;
  s_ += o.s_;
  return *this;
}

QSqrt5& QSqrt5::operator-=(const QSqrt5& o) {
  r_ -= o.r_;
  s_ -= o.s_;
  return *this;
}

QSqrt5& QSqrt5::operator*=(const QSqrt5& o) {
  Rational r = r_ * o.r_ + 5 * s_ * o.s_;
  Rational s = r_ * o.s_ + s_ * o.r_;
  r_ = std::move(r);
  s_ = std::move(s);
  return *this;
}

QSqrt5& QSqrt5::operator/=(const QSqrt5& o) {
  const Rational n = o.norm();
  if (n == 0) throw Error("QSqrt5: division by zero");
  *this *= o.conjugate();
  r_ /= n;
  s_ /= n;
  return *this;
}

std::strong_ordering operator<=>(const QSqrt5& x, const QSqrt5& y) {
  const int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double QSqrt5::to_double() const {
  // r + s√5 = (r² - 5s²)/(r - s√5) avoids cancellation when r ≈ -s√5.
  const double r = cfentropy::to_double(r_);
  const double s = cfentropy::to_double(s_) * std::sqrt(5.0);
  if (r != 0 && s != 0 && (r > 0) != (s > 0)) return cfentropy::to_double(norm()) / (r - s);
  return r + s;
}

QSqrt5 pow(QSqrt5 base, long long exponent) {
  if (exponent < 0) return pow(QSqrt5(1) / base, -exponent);
  QSqrt5 result(1);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

std::string to_string(const QSqrt5& x) {
  return to_string(x.rational_part()) + " + " + to_string(x.sqrt5_part()) + "*sqrt5";
}

}  // namespace cfentropy
