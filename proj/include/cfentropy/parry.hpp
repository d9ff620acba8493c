#pragma once

// Parry's constant-slope conjugacy for the Artin (-1, 1) and Hurwitz
// (-1/2, 1/2) maps on their shared eight-cell Markov partition.
//
// The cylinder measure of an admissible word (ω_0, ..., ω_n) is v[ω_n]/λ^n,
// where λ = (1 + √5)/2 and v is the right probability eigenvector of the
// transition matrix. All measures are exact elements of Q(√5); doubles only
// appear in reported brackets.

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "cfentropy/markov.hpp"
#include "cfentropy/qsqrt5.hpp"

namespace cfentropy::parry {

using cfmap::Params;
using markov::MarkovPartition;
using markov::TransitionMatrix;
using projective::CutPoint;
using projective::MoebiusMap;

enum class Regime { artin, hurwitz };

const char* to_string(Regime regime);
Params regime_params(Regime regime);

class InadmissibleWord : public Error {
 public:
  using Error::Error;
};

class DegeneratePair : public Error {
 public:
  using Error::Error;
};

/// Symbols are 1-based cell numbers.
struct SymbolWord {
  Regime regime = Regime::artin;
  std::vector<int> symbols;

  std::size_t size() const { return symbols.size(); }
  friend bool operator==(const SymbolWord&, const SymbolWord&) = default;
};

std::string to_string(const SymbolWord& word);

/// Endpoints -∞, -2, -1, -1/2, 0, 1/2, 1, 2, +∞: the preimage under k of
/// -1, -2/3, -1/2, -1/3, 0, 1/3, 1/2, 2/3, 1.
std::vector<CutPoint> shared_endpoints();

/// The shared partition with the branch assignment of `regime`.
MarkovPartition paper_partition_8(Regime regime);

/// Markov data plus the exact Parry eigenvector for λ = (1 + √5)/2.
class ParryModel {
 public:
  explicit ParryModel(MarkovPartition partition);

  static const ParryModel& get(Regime regime);

  const MarkovPartition& partition() const { return partition_; }
  const TransitionMatrix& matrix() const { return matrix_; }
  const QSqrt5& lambda() const { return lambda_; }
  const QSqrt5& inverse_lambda() const { return inverse_lambda_; }
  /// v[i] for the 0-based cell i; the entries sum to 1.
  const std::vector<QSqrt5>& eigenvector() const { return v_; }
  std::size_t size() const { return v_.size(); }

  bool admissible(const std::vector<int>& symbols) const;
  /// 1-based symbols admissible after `symbol`, in increasing order.
  std::vector<int> successors(int symbol) const;

 private:
  MarkovPartition partition_;
  TransitionMatrix matrix_;
  QSqrt5 lambda_;
  QSqrt5 inverse_lambda_;
  std::vector<QSqrt5> v_;
};

/// Kernel vector of (M - λI) over Q(√5), normalized to sum 1. Throws Error if
/// λ is not a simple eigenvalue.
std::vector<QSqrt5> exact_eigenvector(const TransitionMatrix& m, const QSqrt5& lambda);

/// v[ω_n]/λ^n, exact. Throws InadmissibleWord.
QSqrt5 cylinder_measure(const SymbolWord& word);

/// Floating form: v[ω_n]/λ^n for an explicit eigenpair (0-based v).
double cylinder_measure(const std::vector<int>& symbols, const std::vector<double>& v, double lambda);

struct ExpandingReport {
  std::size_t checked = 0;
  double max_error = 0;
  bool passed = true;
};

/// ρ(shift(ω)) = λ·ρ(ω), exactly in Q(√5); words must have length ≥ 2.
ExpandingReport expanding_property_check(const std::vector<SymbolWord>& words);

SymbolWord random_admissible_word(Regime regime, std::size_t length, std::mt19937_64& rng);

struct CylinderInterval {
  SymbolWord word;
  CutPoint lo;
  CutPoint hi;
  /// Composition of inverse branches B_{ω_0}⁻¹ ∘ … ∘ B_{ω_{n-1}}⁻¹, which
  /// maps the cell ω_n onto the cylinder.
  MoebiusMap composed_map;
};

/// I(ω) = B_{ω_0}⁻¹(I(ω_1, …, ω_n)), computed right to left exactly.
CylinderInterval cylinder_interval(const SymbolWord& word);

/// Bracket for ψ(x) = -1 + 2·ρ'([-∞, x]) after `depth` levels of descent.
struct PsiBracket {
  QSqrt5 exact_lo;
  QSqrt5 exact_hi;
  double lo = 0;
  double hi = 0;
  std::size_t depth = 0;

  bool contains(const QSqrt5& value) const { return exact_lo <= value && value <= exact_hi; }
  double width() const { return hi - lo; }
};

/// Descends the cylinder tree along the itinerary of x, summing the measures
/// of cylinders to its left. A point on a cylinder boundary descends into the
/// right-hand cylinder.
PsiBracket psi(Regime regime, const CutPoint& x, std::size_t depth = 30);
PsiBracket psi(const ParryModel& model, const CutPoint& x, std::size_t depth = 30);

/// -1 + 2·(v_1 + … + v_i): ψ at the left end of the 1-based cell i + 1.
QSqrt5 psi_at_endpoint(Regime regime, std::size_t i);

struct PsiEqualityReport {
  std::size_t points = 0;
  bool all_overlap = true;
  double max_gap = 0;
  double max_width = 0;
};

/// Brackets of ψ_A and ψ_H at every point must overlap.
PsiEqualityReport psi_equality_check(const std::vector<CutPoint>& points, std::size_t depth = 30);

/// Pseudo-random rationals on the cut line, uniform in compactified
/// coordinates.
std::vector<CutPoint> random_points(std::size_t count, std::uint64_t seed);

struct QuotientBracket {
  double lo = 0;
  double hi = 0;
  bool contains_lambda = false;
};

/// (ψ(f x) - ψ(f y)) / (ψ(x) - ψ(y)) by interval arithmetic on the exact
/// brackets. Throws DegeneratePair when the brackets of x and y overlap.
QuotientBracket difference_quotient(const ParryModel& model, const cfmap::BranchedMap& f, const CutPoint& x,
                                    const CutPoint& y, std::size_t depth = 30);

struct SlopeCheckOptions {
  std::size_t pairs = 100;
  std::size_t depth = 30;
  std::uint64_t seed = 1;
  /// Pairs closer than this in ψ are resampled.
  double min_separation = 1e-3;
};

struct OffsetEstimate {
  double expected = 0;
  double lo = 0;  ///< intersection of per-sample brackets
  double hi = 0;
  double estimate() const { return 0.5 * (lo + hi); }
};

struct SlopeReport {
  std::size_t pairs = 0;
  std::size_t resampled = 0;
  bool all_contain_lambda = true;
  double max_quotient_width = 0;
  double worst_midpoint_error = 0;
  /// c_1 … c_4 for T on [-∞, -1/2], S on [-1, 0], S on [0, 1], T⁻¹ on [1/2, ∞].
  std::array<OffsetEstimate, 4> offsets{};
  bool offsets_ok = true;

  bool passed() const { return all_contain_lambda && offsets_ok; }
};

/// Slope λ for same-piece pairs of the regime's own map, and the four
/// offsets of ψ∘{T,S,T⁻¹}∘ψ⁻¹, using that regime's ψ.
SlopeReport constant_slope_check(Regime regime, const SlopeCheckOptions& options = {});

/// For (a, b) in [-1, -1/2] × [1/2, 1]: with ψ = ψ_A, ψ∘f_{a,b}∘ψ⁻¹ has slope
/// λ on each of [-∞, a], [a, 0], [0, b], [b, +∞].
SlopeReport golden_square_slope_check(const Params& params, const SlopeCheckOptions& options = {});

bool in_golden_square(const Params& params);

}  // namespace cfentropy::parry
