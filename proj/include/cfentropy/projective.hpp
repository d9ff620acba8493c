#pragma once

// Exact arithmetic on the projective rational line Q ∪ {∞} and on the integer
// Möbius group generated by T(x) = x + 1 and S(x) = -1/x.

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>

#include "cfentropy/numeric.hpp"

namespace cfentropy::projective {

class MoebiusMap;

/// A point (p : q) of the projective rational line. Always normalized:
/// gcd(|p|, |q|) = 1 and either q > 0 or (p, q) = (1, 0) for ∞.
class ProjPoint {
 public:
  ProjPoint() : p_(0), q_(1) {}
  ProjPoint(BigInt p, BigInt q);
  explicit ProjPoint(const Rational& x) : p_(numerator(x)), q_(denominator(x)) {}

  static ProjPoint infinity() { return ProjPoint(BigInt(1), BigInt(0), Normalized{}); }

  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }
  bool is_infinity() const { return q_ == 0; }

  /// Value of a finite point; throws Error for ∞.
  Rational value() const;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

 private:
  struct Normalized {};
  ProjPoint(BigInt p, BigInt q, Normalized) : p_(std::move(p)), q_(std::move(q)) {}
  friend ProjPoint apply(const MoebiusMap& m, const ProjPoint& x);

  BigInt p_;
  BigInt q_;
};

struct ProjPointHash {
  std::size_t operator()(const ProjPoint& x) const noexcept {
    return hash_value(x.p()) * 1000003u ^ hash_value(x.q());
  }
};

/// Which end of an interval a point plays. An endpoint that lands on ∞ under
/// an increasing map becomes -∞ when it is a left end and +∞ when it is a
/// right end.
enum class EndpointRole { left, right };

/// A point of the line cut open at ∞: -∞ < every rational < +∞.
class CutPoint {
 public:
  enum class Kind { neg_infinity, finite, pos_infinity };

  CutPoint() = default;
  explicit CutPoint(const Rational& x) : kind_(Kind::finite), point_(x) {}
  explicit CutPoint(const ProjPoint& x, EndpointRole role = EndpointRole::left);
  CutPoint(long long p, long long q) : CutPoint(Rational(BigInt(p), BigInt(q))) {}

  static CutPoint neg_infinity() { return CutPoint(Kind::neg_infinity); }
  static CutPoint pos_infinity() { return CutPoint(Kind::pos_infinity); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  /// The projective point underneath; both ends map to ∞.
  ProjPoint proj() const { return is_finite() ? point_ : ProjPoint::infinity(); }
  /// Finite value; throws Error at either end.
  Rational value() const;

  friend std::strong_ordering operator<=>(const CutPoint& x, const CutPoint& y);
  friend bool operator==(const CutPoint& x, const CutPoint& y) { return (x <=> y) == 0; }

 private:
  explicit CutPoint(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::finite;
  ProjPoint point_;
};

struct CutPointHash {
  std::size_t operator()(const CutPoint& x) const noexcept {
    return ProjPointHash{}(x.proj()) + static_cast<std::size_t>(x.kind());
  }
};

/// x ↦ (αx + β)/(γx + δ) with integer entries, stored in PSL-canonical form
/// (first nonzero entry positive), so that PSL equality is entrywise equality.
class MoebiusMap {
 public:
  MoebiusMap(BigInt alpha, BigInt beta, BigInt gamma, BigInt delta);

  static MoebiusMap identity() { return {BigInt(1), BigInt(0), BigInt(0), BigInt(1)}; }
  static MoebiusMap T() { return {BigInt(1), BigInt(1), BigInt(0), BigInt(1)}; }
  static MoebiusMap S() { return {BigInt(0), BigInt(-1), BigInt(1), BigInt(0)}; }
  static MoebiusMap T_inverse() { return {BigInt(1), BigInt(-1), BigInt(0), BigInt(1)}; }

  const BigInt& alpha() const { return a_; }
  const BigInt& beta() const { return b_; }
  const BigInt& gamma() const { return c_; }
  const BigInt& delta() const { return d_; }
  BigInt determinant() const { return a_ * d_ - b_ * c_; }

  friend bool operator==(const MoebiusMap&, const MoebiusMap&) = default;

 private:
  BigInt a_, b_, c_, d_;
};

ProjPoint apply(const MoebiusMap& m, const ProjPoint& x);

/// Image of an interval endpoint under an orientation-preserving map.
CutPoint apply(const MoebiusMap& m, const CutPoint& x, EndpointRole role);

/// m1 ∘ m2.
MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2);

/// Inverse in PGL(2, Z); requires det = ±1.
MoebiusMap inverse(const MoebiusMap& m);

bool psl_equal(const MoebiusMap& m1, const MoebiusMap& m2);

/// k(x) = x / (1 + |x|), with k(±∞) = ±1.
Rational compactify(const CutPoint& x);

/// Inverse of compactify on [-1, 1].
CutPoint decompactify(const Rational& t);

std::string to_string(const ProjPoint& x);
std::string to_string(const CutPoint& x);
std::string to_string(const MoebiusMap& m);
std::ostream& operator<<(std::ostream& os, const ProjPoint& x);
std::ostream& operator<<(std::ostream& os, const CutPoint& x);
std::ostream& operator<<(std::ostream& os, const MoebiusMap& m);

}  // namespace cfentropy::projective
