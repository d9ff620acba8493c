#pragma once

// Markov partitions of f_{a,b} built from orbit closures of its discontinuity
// data, 0/1 transition matrices, and entropy as log of the spectral radius.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfentropy/cfmap.hpp"
#include "cfentropy/numeric.hpp"
#include "cfentropy/projective.hpp"

namespace cfentropy::markov {

using cfmap::BranchSymbol;
using cfmap::Params;
using projective::CutPoint;
using projective::ProjPoint;

struct Budget {
  std::size_t max_points = 4096;
  std::size_t max_iter = 4096;
};

class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const std::string& what, Budget budget) : Error(what), budget_(budget) {}
  Budget budget() const { return budget_; }

 private:
  Budget budget_;
};

class NotMarkovWithinBudget : public BudgetExhausted {
 public:
  using BudgetExhausted::BudgetExhausted;
};

class NotMarkov : public Error {
 public:
  NotMarkov(const std::string& what, std::size_t cell) : Error(what), cell_(cell) {}
  std::size_t cell() const { return cell_; }

 private:
  std::size_t cell_;
};

class ZeroMatrix : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

/// Smallest forward-invariant set containing a, b, Ta, Sa, Sb, T⁻¹b, ∞, and
/// 0 when a < 0 < b. Sorted along the cut line, ∞ last.
/// Throws BudgetExhausted when an orbit does not close within max_iter steps
/// or the set grows beyond max_points.
std::vector<ProjPoint> orbit_closure(const Params& params, Budget budget = {});

/// f^{m_a}(Sa) = f^{k_a}(Ta) and f^{m_b}(T⁻¹b) = f^{k_b}(Sb).
struct CycleWitness {
  std::size_t m_a = 0, k_a = 0, m_b = 0, k_b = 0;
  friend bool operator==(const CycleWitness&, const CycleWitness&) = default;
};

/// Minimal witness (smallest m + k, then smallest m) over orbits of length
/// at most max_iter, or nothing.
std::optional<CycleWitness> cycle_witness(const Params& params, std::size_t max_iter = 4096);

/// Cells [endpoint[i], endpoint[i+1]] covering [-∞, +∞], each inside one
/// monotone piece of f_{a,b} and each mapped onto a union of cells.
class MarkovPartition {
 public:
  const Params& params() const { return params_; }
  const std::vector<CutPoint>& endpoints() const { return endpoints_; }
  std::size_t size() const { return branches_.size(); }
  CutPoint cell_lo(std::size_t i) const { return endpoints_[i]; }
  CutPoint cell_hi(std::size_t i) const { return endpoints_[i + 1]; }
  BranchSymbol branch(std::size_t i) const { return branches_[i]; }
  /// Image of cell i is the union of cells image_first(i) .. image_last(i).
  std::size_t image_first(std::size_t i) const { return image_lo_[i]; }
  std::size_t image_last(std::size_t i) const { return image_hi_[i] - 1; }
  /// Index of the cell with x in [lo, hi); +∞ belongs to the last cell.
  std::size_t locate(const CutPoint& x) const;

 private:
  MarkovPartition(Params params, std::vector<CutPoint> endpoints);
  friend MarkovPartition build_partition(const Params&, const std::vector<CutPoint>&);

  Params params_;
  std::vector<CutPoint> endpoints_;
  std::vector<BranchSymbol> branches_;
  std::vector<std::size_t> image_lo_;
  std::vector<std::size_t> image_hi_;
};

/// Builds the partition on `points` (finite points; ±∞ are added). Throws
/// NotMarkov naming the first cell whose image endpoints are not partition
/// points, or which straddles a breakpoint.
MarkovPartition build_partition(const Params& params, const std::vector<CutPoint>& points);
MarkovPartition build_partition(const Params& params, const std::vector<ProjPoint>& points);

MarkovPartition refine_partition(const MarkovPartition& partition, const std::vector<CutPoint>& extra);

class TransitionMatrix {
 public:
  explicit TransitionMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {}
  explicit TransitionMatrix(const std::vector<std::vector<int>>& rows);

  std::size_t size() const { return n_; }
  int operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, int value) { entries_[i * n_ + j] = static_cast<std::uint8_t>(value != 0); }

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> entries_;
};

std::string to_string(const TransitionMatrix& m);

/// M[i][j] = 1 iff the branch image of cell i contains cell j.
TransitionMatrix transition_matrix(const MarkovPartition& partition);

/// Transition matrix of any branched map on the cells between consecutive
/// `endpoints` (which must span its domain). Throws NotMarkov like
/// build_partition.
TransitionMatrix transition_matrix(const cfmap::BranchedMap& map, const std::vector<CutPoint>& endpoints);

struct SpectrumResult {
  double rho_lo = 0;
  double rho_hi = 0;
  double entropy_lo = 0;
  double entropy_hi = 0;
  std::size_t iterations = 0;

  double rho() const { return 0.5 * (rho_lo + rho_hi); }
  double entropy() const { return 0.5 * (entropy_lo + entropy_hi); }
};

/// Spectral radius bracket from Collatz–Wielandt bounds of power iteration
/// on I + M over each strongly connected component. Throws ZeroMatrix when
/// the matrix has no cycle.
SpectrumResult spectral_radius(const TransitionMatrix& m, double tol = 1e-12);

/// Nonnegative right eigenvector for the spectral radius, normalized to sum 1.
std::vector<double> right_eigenvector(const TransitionMatrix& m, double tol = 1e-13);

/// Integer polynomial, coefficients from the constant term up.
struct IntPolynomial {
  std::vector<BigInt> coefficients;

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
  Rational operator()(const Rational& x) const;
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
};

IntPolynomial operator*(const IntPolynomial& p, const IntPolynomial& q);
std::string to_string(const IntPolynomial& p);

/// det(xI - M), exact (Faddeev–LeVerrier over the integers). n ≤ 64.
IntPolynomial char_poly(const TransitionMatrix& m);

/// Whether p changes sign between lo and hi, evaluated exactly at the
/// dyadic rationals the doubles represent.
bool changes_sign(const IntPolynomial& p, double lo, double hi);

struct MarkovEntropy {
  SpectrumResult spectrum;
  MarkovPartition partition;
  TransitionMatrix matrix;
};

/// orbit_closure → build_partition → transition_matrix → spectral_radius.
/// Throws NotMarkovWithinBudget when the orbit closure exhausts the budget.
MarkovEntropy markov_entropy(const Params& params, Budget budget = {}, double tol = 1e-12);

}  // namespace cfentropy::markov
