#pragma once

// Entropy queries, parameter sweeps, conjecture reports and verification
// suites behind the command-line tool.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cfentropy/lapcount.hpp"
#include "cfentropy/markov.hpp"

namespace cfentropy::explorer {

using cfmap::Params;
using markov::CycleWitness;

class UnknownSuite : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

enum class Method { automatic, markov_only, lapcount_only };
enum class RecordMethod { markov, lapcount };

Method parse_method(const std::string& name);
const char* to_string(RecordMethod method);

struct EntropyOptions {
  Method method = Method::automatic;
  markov::Budget budget{};
  double tol = 1e-12;
  std::size_t depth = lapcount::kDefaultDepth;
  std::size_t max_points = lapcount::kDefaultPointCap;
  std::size_t cycle_iter = 4096;
};

struct EntropyRecord {
  Rational a;
  Rational b;
  double entropy = 0;
  double uncertainty = 0;
  RecordMethod method = RecordMethod::markov;
  std::optional<std::size_t> matrix_size;
  std::optional<CycleWitness> cycle_witness;
};

/// Markov entropy; in automatic mode a NotMarkovWithinBudget falls back to
/// lap counting. For Markov records the uncertainty is the half-width of the
/// log spectral-radius bracket.
EntropyRecord compute_entropy(const Params& params, const EntropyOptions& options = {});

struct Range {
  Rational lo;
  Rational hi;
};

struct SweepSpec {
  Range a;
  Range b;
  Rational step{1, 20};
  EntropyOptions options{};
  std::size_t jobs = 0;  ///< 0: one per hardware thread
  /// Grid points with a larger denominator in a or b are skipped; orbit
  /// closures of such points tend to exhaust the budget.
  std::size_t max_denominator = 64;
};

struct SkippedPoint {
  Rational a;
  Rational b;
  std::string reason;
};

struct SweepResult {
  std::vector<EntropyRecord> records;  ///< lexicographic in (a, b)
  std::vector<SkippedPoint> skipped;
  std::size_t grid_points = 0;
};

/// Runs the grid a.lo + i·step, b.lo + j·step on a thread pool. Points
/// outside the parameter space are skipped with the violated constraint as
/// the reason; so are points whose entropy computation fails.
SweepResult run_sweep(const SweepSpec& spec);

/// Runs an explicit list of parameter points (already ordered as wanted).
SweepResult run_points(const std::vector<std::pair<Rational, Rational>>& points, const EntropyOptions& options,
                       std::size_t jobs);

/// Named presets: "surface", "fixed-b", "families".
SweepResult run_preset(const std::string& name, const EntropyOptions& options, std::size_t jobs);
std::vector<std::string> preset_names();

/// The surface preset's grid: a ∈ [-5/4, 0], b ∈ [0, 5/4], step 1/20.
SweepSpec surface_spec();

/// b values of the fixed-b preset and its a-grid step.
std::vector<Rational> fixed_b_values();

void write_csv(std::ostream& os, const std::vector<EntropyRecord>& records);
nlohmann::json to_json(const EntropyRecord& record);
nlohmann::json to_json(const SweepResult& result);

/// Bound, monotonicity, plateau and symmetry checks of a sweep; reports,
/// never asserts.
nlohmann::json conjecture_report(const SweepResult& result);

struct PlateauSlice {
  Rational b;
  std::size_t points = 0;
  double spread = 0;
  double combined_uncertainty = 0;
  bool flat() const { return spread <= combined_uncertainty; }
};

/// For b ≤ 1/2: spread of the entropies with -1 ≤ a ≤ -1/(b+1).
std::vector<PlateauSlice> plateau_slices(const std::vector<EntropyRecord>& records);

struct BoundCheck {
  std::size_t violations = 0;
  double worst_excess = 0;
};

/// Records outside [log κ - u, log φ + u].
BoundCheck bound_check(const std::vector<EntropyRecord>& records);

double log_golden();
double log_kappa();

struct CheckLine {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckLine> lines;
  bool passed() const;
};

/// Suites: matrices, psi, recode, slopes, gauss, all.
VerifyReport run_verify(const std::string& suite, std::uint64_t seed = 7);
std::vector<std::string> suite_names();

}  // namespace cfentropy::explorer
