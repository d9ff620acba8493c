#include "cfentropy/recode.hpp"

#include "doctest.h"

using namespace cfentropy;
using namespace cfentropy::recode;

namespace {

SymbolWord A(std::vector<int> s) { return {Regime::artin, std::move(s)}; }
SymbolWord H(std::vector<int> s) { return {Regime::hurwitz, std::move(s)}; }

// Admissible Artin words of a given length ending in {1, 2, 7, 8}, counted
// by dynamic programming on the matrix alone.
std::size_t count_words(std::size_t length) {
  static const int succ[8][2] = {{1, 2}, {3, 4}, {7, 0}, {8, 0}, {1, 0}, {2, 0}, {5, 6}, {7, 8}};
  std::vector<std::size_t> ways(9, 1);
  ways[0] = 0;
  for (std::size_t k = 1; k < length; ++k) {
    std::vector<std::size_t> next(9, 0);
    for (int s = 1; s <= 8; ++s)
      for (int t : succ[s - 1])
        if (t) next[t] += ways[s];
    ways = next;
  }
  return ways[1] + ways[2] + ways[7] + ways[8];
}

}  // namespace

TEST_CASE("forced tails") {
  CHECK(extend_forced_tail(A({3})) == A({3, 7}));
  CHECK(extend_forced_tail(A({6, 2, 4})) == A({6, 2, 4, 8}));
  CHECK(extend_forced_tail(A({3, 7, 5})) == A({3, 7, 5, 1}));
  CHECK(extend_forced_tail(A({1, 2})) == A({1, 2}));
  // Same cylinder interval after extension.
  const auto before = parry::cylinder_interval(A({2, 3}));
  const auto after = parry::cylinder_interval(extend_forced_tail(A({2, 3})));
  CHECK(before.lo == after.lo);
  CHECK(before.hi == after.hi);
}

TEST_CASE("worked recodings") {
  struct Case {
    std::vector<int> omega, tau;
  };
  for (const auto& c : {Case{{3, 7, 5, 1}, {3, 5, 1, 1}}, Case{{6, 2, 4, 8}, {6, 4, 8, 8}},
                        Case{{1, 1, 2, 4, 8}, {1, 1, 2, 4, 8}}, Case{{3, 7, 6, 2}, {3, 5, 1, 2}},
                        Case{{6, 2, 3, 7}, {6, 4, 8, 7}}, Case{{3, 7}, {3, 5}}, Case{{6, 2}, {6, 4}},
                        Case{{8}, {8}}}) {
    CAPTURE(parry::to_string(A(c.omega)));
    const auto tracked = recode_by_tracking(A(c.omega));
    const auto blocked = recode_by_blocks(A(c.omega));
    CHECK(tracked.tau == H(c.tau));
    CHECK(blocked.tau == H(c.tau));
    CHECK(invariants_hold(tracked));
    CHECK(verify_v_equality(tracked));
    const auto hurwitz = parry::cylinder_interval(H(c.tau));
    CHECK(hurwitz.lo == tracked.interval.lo);
    CHECK(hurwitz.hi == tracked.interval.hi);
  }
}

TEST_CASE("nested blocks") {
  // The leftmost block overlaps the recoded suffix.
  const auto w = A({6, 2, 3, 7, 5, 1});
  const auto tracked = recode_by_tracking(w);
  CHECK(recode_by_blocks(w).tau == tracked.tau);
  CHECK(tail_class_holds(tracked));
}

TEST_CASE("recoders reject bad input") {
  CHECK_THROWS_AS(recode_by_tracking(A({1, 3})), parry::InadmissibleWord);
  CHECK_THROWS_AS(recode_by_blocks(A({1, 3})), parry::InadmissibleWord);
  CHECK_THROWS_AS(recode_by_tracking(H({3, 5})), Error);
  CHECK_THROWS_AS(recode_by_tracking(A({3, 7, 5})), Error);  // tail 5 not in {1, 2, 7, 8}
}

TEST_CASE("rank-two table and block identities") {
  const auto rank2 = verify_rank2_table();
  CHECK(rank2.passed());
  CHECK(rank2.checked >= 12);
  const auto blocks = verify_block_identities();
  CHECK(blocks.passed());
  CHECK(blocks.checked >= 4);
}

TEST_CASE("recodable word enumeration") {
  for (std::size_t length = 1; length <= 9; ++length) {
    const auto words = recodable_words(length);
    CHECK(words.size() == count_words(length));
    CHECK(std::is_sorted(words.begin(), words.end(),
                         [](const SymbolWord& x, const SymbolWord& y) { return x.symbols < y.symbols; }));
  }
}

TEST_CASE("exhaustive check up to length 9") {
  const auto report = exhaustive_check(9, 1);
  CHECK(report.passed());
  std::size_t expected = 0;
  for (std::size_t length = 1; length <= 9; ++length) expected += count_words(length);
  CHECK(report.checked == expected);
  CHECK_FALSE(report.first_failure.has_value());
}
