#pragma once

// The boundary maps f_{a,b} (x+1 left of a, -1/x on [a,b), x-1 from b on) and
// the slow Gauss map, as piecewise Möbius maps on the cut line.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfentropy/numeric.hpp"
#include "cfentropy/projective.hpp"

namespace cfentropy::cfmap {

using projective::CutPoint;
using projective::MoebiusMap;
using projective::ProjPoint;

class OutOfParameterSpace : public Error {
 public:
  using Error::Error;
};

/// A point of the parameter set {a ≤ 0 ≤ b, b - a ≥ 1, -ab ≤ 1}.
class Params {
 public:
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  Params(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
  friend Params validate_params(const Rational& a, const Rational& b);

  Rational a_;
  Rational b_;
};

/// Throws OutOfParameterSpace naming the first violated constraint.
Params validate_params(const Rational& a, const Rational& b);

std::string to_string(const Params& params);

enum class BranchSymbol {
  T,           ///< x + 1
  S,           ///< -1/x
  Tinv,        ///< x - 1
  Reciprocal,  ///< 1/x (slow Gauss map only)
};

MoebiusMap branch_map(BranchSymbol symbol);
const char* to_string(BranchSymbol symbol);

/// A maximal interval on which one branch acts continuously and monotonically.
/// Branch cells are split at interior poles (for f_{a,b}, the S-cell splits at 0).
struct MonotonePiece {
  CutPoint lo;
  CutPoint hi;
  BranchSymbol symbol;
};

/// Piecewise Möbius map on [domain_lo, domain_hi]. Cell i is
/// [breakpoint[i-1], breakpoint[i]) with the domain ends closed, so a
/// breakpoint belongs to the cell on its right.
class BranchedMap {
 public:
  BranchedMap(CutPoint domain_lo, CutPoint domain_hi, std::vector<CutPoint> breakpoints,
              std::vector<BranchSymbol> branches);

  const CutPoint& domain_lo() const { return lo_; }
  const CutPoint& domain_hi() const { return hi_; }
  const std::vector<CutPoint>& breakpoints() const { return breakpoints_; }
  const std::vector<BranchSymbol>& branches() const { return branches_; }

  bool contains(const CutPoint& x) const { return lo_ <= x && x <= hi_; }
  std::size_t cell_index(const CutPoint& x) const;

  BranchSymbol branch_at(const CutPoint& x) const { return branches_[cell_index(x)]; }

  /// Value on the cut line. A value at ∞ is resolved by right-continuity
  /// (left-closed cells), except at the right end of the domain.
  CutPoint eval(const CutPoint& x) const;

  /// Projective evaluation; ∞ is dispatched to the last cell.
  ProjPoint eval(const ProjPoint& x) const;

  std::vector<MonotonePiece> monotone_pieces() const;

 private:
  CutPoint lo_;
  CutPoint hi_;
  std::vector<CutPoint> breakpoints_;
  std::vector<BranchSymbol> branches_;
  std::vector<MoebiusMap> maps_;
};

BranchedMap make_fab(const Params& params);

/// g(x) = 1/x on [0, 1), x - 1 on [1, ∞].
BranchedMap make_slow_gauss();

struct FactorReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool passed = true;
  std::optional<std::string> counterexample;
};

/// |x| on R ∪ {∞}.
ProjPoint magnitude(const ProjPoint& x);

/// Checks g(|x|) = |f_{-1,1}(x)| exactly. The point x = -1 is excluded from
/// the pseudo-random sample: there the two half-open conventions disagree
/// (f takes the S branch, g takes the x - 1 branch at 1), although the
/// one-sided limits agree.
FactorReport check_factor_relation(std::size_t n_samples, std::uint64_t seed);

/// Whether the factor relation holds at one point under the pointwise
/// conventions of both maps.
bool factor_relation_holds_at(const ProjPoint& x);

}  // namespace cfentropy::cfmap
