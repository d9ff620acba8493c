#include "cfentropy/projective.hpp"

#include <ostream>
#include <utility>

namespace cfentropy::projective {

namespace {

BigInt abs_of(const BigInt& x) { return x.sign() < 0 ? BigInt(-x) : x; }

}  // namespace

ProjPoint::ProjPoint(BigInt p, BigInt q) : p_(std::move(p)), q_(std::move(q)) {
  if (p_ == 0 && q_ == 0) throw Error("ProjPoint: (0 : 0) is not a point");
  if (q_ == 0) {
    p_ = 1;
    return;
  }
  const BigInt g = gcd(abs_of(p_), abs_of(q_));
  if (g != 1) {
    p_ /= g;
    q_ /= g;
  }
  if (q_.sign() < 0) {
    p_ = -p_;
    q_ = -q_;
  }
}

Rational ProjPoint::value() const {
  if (is_infinity()) throw Error("ProjPoint::value: point at infinity");
  return Rational(p_, q_);
}

CutPoint::CutPoint(const ProjPoint& x, EndpointRole role) {
  if (x.is_infinity()) {
    kind_ = role == EndpointRole::left ? Kind::neg_infinity : Kind::pos_infinity;
  } else {
    kind_ = Kind::finite;
    point_ = x;
  }
}

Rational CutPoint::value() const {
  if (!is_finite()) throw Error("CutPoint::value: infinite end of the cut line");
  return point_.value();
}

std::strong_ordering operator<=>(const CutPoint& x, const CutPoint& y) {
  if (x.kind_ != y.kind_ || !x.is_finite()) return x.kind_ <=> y.kind_;
  const BigInt lhs = x.point_.p() * y.point_.q();
  const BigInt rhs = y.point_.p() * x.point_.q();
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

MoebiusMap::MoebiusMap(BigInt alpha, BigInt beta, BigInt gamma, BigInt delta)
    : a_(std::move(alpha)), b_(std::move(beta)), c_(std::move(gamma)), d_(std::move(delta)) {
  const BigInt* first = a_ != 0 ? &a_ : b_ != 0 ? &b_ : c_ != 0 ? &c_ : &d_;
  if (first->sign() < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

ProjPoint apply(const MoebiusMap& m, const ProjPoint& x) {
  BigInt p = m.alpha() * x.p() + m.beta() * x.q();
  BigInt q = m.gamma() * x.p() + m.delta() * x.q();
  const BigInt det = m.determinant();
  if (det == 1 || det == -1) {
    // Unimodular maps send primitive vectors to primitive vectors; only the
    // sign needs fixing.
    if (q == 0) return ProjPoint::infinity();
    if (q.sign() < 0) {
      p = -p;
      q = -q;
    }
    return ProjPoint(std::move(p), std::move(q), ProjPoint::Normalized{});
  }
  return ProjPoint(std::move(p), std::move(q));
}

CutPoint apply(const MoebiusMap& m, const CutPoint& x, EndpointRole role) {
  return CutPoint(apply(m, x.proj()), role);
}

MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) {
  return MoebiusMap(m1.alpha() * m2.alpha() + m1.beta() * m2.gamma(), m1.alpha() * m2.beta() + m1.beta() * m2.delta(),
                    m1.gamma() * m2.alpha() + m1.delta() * m2.gamma(), m1.gamma() * m2.beta() + m1.delta() * m2.delta());
}

MoebiusMap inverse(const MoebiusMap& m) {
  const BigInt det = m.determinant();
  if (det != 1 && det != -1) throw Error("inverse: determinant is not ±1");
  // The adjugate equals ±inverse, which is the same element of PGL.
  return MoebiusMap(m.delta(), -m.beta(), -m.gamma(), m.alpha());
}

bool psl_equal(const MoebiusMap& m1, const MoebiusMap& m2) { return m1 == m2; }

Rational compactify(const CutPoint& x) {
  switch (x.kind()) {
    case CutPoint::Kind::neg_infinity:
      return Rational(-1);
    case CutPoint::Kind::pos_infinity:
      return Rational(1);
    case CutPoint::Kind::finite:
      break;
  }
  const ProjPoint& pt = x.proj();
  return Rational(pt.p(), pt.q() + abs_of(pt.p()));
}

CutPoint decompactify(const Rational& t) {
  if (t <= -1) {
    if (t < -1) throw Error("decompactify: value below -1");
    return CutPoint::neg_infinity();
  }
  if (t >= 1) {
    if (t > 1) throw Error("decompactify: value above 1");
    return CutPoint::pos_infinity();
  }
  const Rational magnitude = t.sign() < 0 ? Rational(-t) : t;
  return CutPoint(Rational(t / (1 - magnitude)));
}

std::string to_string(const ProjPoint& x) {
  if (x.is_infinity()) return "inf";
  return cfentropy::to_string(x.value());
}

std::string to_string(const CutPoint& x) {
  switch (x.kind()) {
    case CutPoint::Kind::neg_infinity:
      return "-inf";
    case CutPoint::Kind::pos_infinity:
      return "+inf";
    case CutPoint::Kind::finite:
      break;
  }
  return to_string(x.proj());
}

std::string to_string(const MoebiusMap& m) {
  return "[[" + m.alpha().str() + ", " + m.beta().str() + "], [" + m.gamma().str() + ", " + m.delta().str() + "]]";
}

std::ostream& operator<<(std::ostream& os, const ProjPoint& x) { return os << to_string(x); }
std::ostream& operator<<(std::ostream& os, const CutPoint& x) { return os << to_string(x); }
std::ostream& operator<<(std::ostream& os, const MoebiusMap& m) { return os << to_string(m); }

}  // namespace cfentropy::projective
