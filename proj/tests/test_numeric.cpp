#include "cfentropy/numeric.hpp"
#include "cfentropy/qsqrt5.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace cfentropy;

TEST_CASE("parse_rational accepts p/q, p and signs") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK(parse_rational("-1") == Rational(-1));
  CHECK(parse_rational("0") == Rational(0));
  CHECK(parse_rational("123456789012345678901234567890/3") ==
        Rational(BigInt("123456789012345678901234567890"), BigInt(3)));
}

TEST_CASE("parse_rational rejects malformed input") {
  for (const char* bad : {"", "1/0", "a/2", "1/", "/2", "1.5", " 1", "1/-2", "--1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), ParseError);
  }
}

TEST_CASE("from_double is exact") {
  CHECK(from_double(0.5) == Rational(1, 2));
  CHECK(from_double(-3.0) == Rational(-3));
  CHECK(from_double(0.1) != Rational(1, 10));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double x = d(rng);
    CHECK(to_double(from_double(x)) == x);
  }
}

TEST_CASE("format_significant uses fixed notation") {
  CHECK(format_significant(0.481211825059603) == "0.481211825060");
  CHECK(format_significant(1.5, 4) == "1.500");
  CHECK(format_significant(0.0, 3) == "0.00");
  CHECK(format_significant(-0.00012345, 3) == "-0.000123");
}

TEST_CASE("golden ratio satisfies x^2 = x + 1 exactly") {
  const QSqrt5 phi = QSqrt5::golden();
  CHECK(phi * phi == phi + QSqrt5(1));
  CHECK(QSqrt5(1) / phi == phi - QSqrt5(1));
  CHECK(phi.to_double() == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-15));
  CHECK(pow(phi, -3) * pow(phi, 3) == QSqrt5(1));
}

TEST_CASE("QSqrt5 sign and order are exact near cancellation") {
  // F_{n+1} - F_n·φ = (-1/φ)^n alternates in sign and shrinks.
  const QSqrt5 phi = QSqrt5::golden();
  long long f0 = 0, f1 = 1;
  for (int n = 1; n < 60; ++n) {
    const QSqrt5 diff = QSqrt5(Rational(f1 + f0)) - QSqrt5(Rational(f1)) * phi;
    CAPTURE(n);
    CHECK(diff.sign() == (n % 2 == 0 ? 1 : -1));
    CHECK(diff == pow(QSqrt5(1) - phi, n));
    const long long f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
  }
}

TEST_CASE("QSqrt5 field operations agree with floating point") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 30);
  auto random = [&] { return QSqrt5(Rational(num(rng), den(rng)), Rational(num(rng), den(rng))); };
  auto value = [](const QSqrt5& x) {
    return to_double(x.rational_part()) + to_double(x.sqrt5_part()) * std::sqrt(5.0);
  };
  for (int i = 0; i < 300; ++i) {
    const QSqrt5 x = random(), y = random();
    CHECK((x + y).to_double() == doctest::Approx(value(x) + value(y)).epsilon(1e-9));
    CHECK((x * y).to_double() == doctest::Approx(value(x) * value(y)).epsilon(1e-9));
    if (!y.is_zero()) CHECK((x / y) * y == x);
    CHECK(((x < y) == (value(x) < value(y)) || std::abs(value(x) - value(y)) < 1e-9));
  }
}
