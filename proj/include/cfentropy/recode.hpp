#pragma once

// Recoding Artin-admissible itineraries as Hurwitz-admissible ones with the
// same cylinder interval. Two independent procedures: exact interval tracking,
// and substitution of the exceptional blocks 3751, 3762, 6237, 6248.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cfentropy/parry.hpp"

namespace cfentropy::recode {

using parry::CylinderInterval;
using parry::Regime;
using parry::SymbolWord;

/// Raised when an interval fails to recode; this would contradict the
/// recoding lemma and is never expected.
class LemmaViolation : public Error {
 public:
  using Error::Error;
};

struct RecodeResult {
  SymbolWord omega;  ///< Artin word
  SymbolWord tau;    ///< Hurwitz word
  CylinderInterval interval;
};

/// Appends the forced successor of a tail 3, 4, 5 or 6 (3→7, 4→8, 5→1, 6→2),
/// which leaves the cylinder interval unchanged.
SymbolWord extend_forced_tail(const SymbolWord& word);

/// Follows I_A(ω) forward under the Hurwitz branches, reading off the cell
/// that contains it at each step.
RecodeResult recode_by_tracking(const SymbolWord& omega);

/// Rewrites the first exceptional block after recoding the suffix that starts
/// at its last symbol; block-free words change only in the tail, through the
/// rank-two matching 37→35, 62→64.
RecodeResult recode_by_blocks(const SymbolWord& omega);

/// ω_n ∈ {1, 8} ⇒ τ_n = ω_n; ω_n = 2 ⇒ τ_n ∈ {2, 4}; ω_n = 7 ⇒ τ_n ∈ {5, 7}.
bool tail_class_holds(const RecodeResult& result);

/// Length, first symbol, and tail class.
bool invariants_hold(const RecodeResult& result);

/// v[ω_n] = v[τ_n] exactly.
bool verify_v_equality(const RecodeResult& result);

struct CheckReport {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::optional<std::string> first_failure;

  bool passed() const { return failures == 0; }
  void fail(std::string what);
};

/// The twelve rank-two matchings I_A(ij) = I_H(ij'), plus coverage: every
/// Artin-admissible pair appears in the table.
CheckReport verify_rank2_table();

/// I_A(3751) = I_H(3511), I_A(3762) = I_H(3512), I_A(6237) = I_H(6487),
/// I_A(6248) = I_H(6488), both as intervals and as composed maps in PSL.
CheckReport verify_block_identities();

/// Every Artin-admissible word of length 1 .. max_length with tail in
/// {1, 2, 7, 8}: both recoders succeed and agree, the intervals coincide, and
/// the invariants and v-equality hold.
CheckReport exhaustive_check(std::size_t max_length = 12, std::size_t jobs = 0);

/// The Artin-admissible words of one length with tail in {1, 2, 7, 8}, in
/// lexicographic order.
std::vector<SymbolWord> recodable_words(std::size_t length);

}  // namespace cfentropy::recode
