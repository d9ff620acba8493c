#include "cfentropy/recode.hpp"

#include <algorithm>
#include <array>
#include <future>
#include <thread>
#include <utility>

namespace cfentropy::recode {

using parry::ParryModel;
using projective::CutPoint;
using projective::EndpointRole;

namespace {

bool recodable_tail(int symbol) { return symbol == 1 || symbol == 2 || symbol == 7 || symbol == 8; }

void require_recodable(const SymbolWord& omega) {
  if (omega.regime != Regime::artin) throw Error("recode: expected an Artin word, got " + to_string(omega));
  if (!ParryModel::get(Regime::artin).admissible(omega.symbols)) {
    throw parry::InadmissibleWord("recode: inadmissible word " + to_string(omega));
  }
  if (!recodable_tail(omega.symbols.back())) {
    throw Error("recode: tail of " + to_string(omega) + " is not in {1, 2, 7, 8}; extend it first");
  }
}

struct Block {
  std::array<int, 4> artin;
  std::array<int, 4> hurwitz;
};

constexpr std::array<Block, 4> kBlocks{{
    {{3, 7, 5, 1}, {3, 5, 1, 1}},
    {{3, 7, 6, 2}, {3, 5, 1, 2}},
    {{6, 2, 3, 7}, {6, 4, 8, 7}},
    {{6, 2, 4, 8}, {6, 4, 8, 8}},
}};

struct PairMatch {
  int first;
  int artin_second;
  int hurwitz_second;
};

constexpr std::array<PairMatch, 12> kRank2{{
    {1, 1, 1}, {1, 2, 2}, {2, 3, 3}, {2, 4, 4}, {3, 7, 5}, {4, 8, 8},
    {5, 1, 1}, {6, 2, 4}, {7, 5, 5}, {7, 6, 6}, {8, 7, 7}, {8, 8, 8},
}};

int matched_tail(int first, int second) {
  for (const auto& m : kRank2) {
    if (m.first == first && m.artin_second == second) return m.hurwitz_second;
  }
  throw LemmaViolation("no rank-two match for " + std::to_string(first) + std::to_string(second));
}

const Block* block_at(const std::vector<int>& s, std::size_t k) {
  if (k + 4 > s.size()) return nullptr;
  for (const auto& block : kBlocks) {
    if (std::equal(block.artin.begin(), block.artin.end(), s.begin() + static_cast<std::ptrdiff_t>(k))) return &block;
  }
  return nullptr;
}

std::vector<int> blocks_recursive(const std::vector<int>& s) {
  for (std::size_t k = 0; k + 4 <= s.size(); ++k) {
    const Block* block = block_at(s, k);
    if (!block) continue;
    std::vector<int> suffix = blocks_recursive({s.begin() + static_cast<std::ptrdiff_t>(k + 3), s.end()});
    if (suffix.front() != s[k + 3]) throw LemmaViolation("recoded suffix changed its first symbol");
    std::vector<int> out(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k));
    out.insert(out.end(), block->hurwitz.begin(), block->hurwitz.begin() + 3);
    out.insert(out.end(), suffix.begin(), suffix.end());
    return out;
  }
  std::vector<int> out = s;
  if (out.size() >= 2) out.back() = matched_tail(out[out.size() - 2], out.back());
  return out;
}

RecodeResult finish(const SymbolWord& omega, std::vector<int> tau_symbols, const CylinderInterval& artin_interval) {
  SymbolWord tau{Regime::hurwitz, std::move(tau_symbols)};
  if (!ParryModel::get(Regime::hurwitz).admissible(tau.symbols)) {
    throw LemmaViolation("recoding of " + to_string(omega) + " gave inadmissible " + to_string(tau));
  }
  auto interval = parry::cylinder_interval(tau);
  if (interval.lo != artin_interval.lo || interval.hi != artin_interval.hi) {
    throw LemmaViolation("cylinder of " + to_string(tau) + " differs from that of " + to_string(omega));
  }
  return {omega, std::move(tau), std::move(interval)};
}

}  // namespace

SymbolWord extend_forced_tail(const SymbolWord& word) {
  if (word.symbols.empty()) return word;
  SymbolWord out = word;
  switch (word.symbols.back()) {
    case 3:
      out.symbols.push_back(7);
      break;
    case 4:
      out.symbols.push_back(8);
      break;
    case 5:
      out.symbols.push_back(1);
      break;
    case 6:
      out.symbols.push_back(2);
      break;
    default:
      break;
  }
  return out;
}

RecodeResult recode_by_tracking(const SymbolWord& omega) {
  require_recodable(omega);
  const auto artin_interval = parry::cylinder_interval(omega);
  const auto& partition = ParryModel::get(Regime::hurwitz).partition();

  CutPoint lo = artin_interval.lo;
  CutPoint hi = artin_interval.hi;
  std::vector<int> tau;
  for (std::size_t k = 0; k < omega.size(); ++k) {
    std::size_t cell = partition.size();
    for (std::size_t j = 0; j < partition.size(); ++j) {
      if (partition.cell_lo(j) <= lo && hi <= partition.cell_hi(j)) {
        cell = j;
        break;
      }
    }
    if (cell == partition.size()) {
      throw LemmaViolation("interval [" + projective::to_string(lo) + ", " + projective::to_string(hi) +
                           "] straddles a cell boundary while recoding " + to_string(omega));
    }
    tau.push_back(static_cast<int>(cell) + 1);
    if (k + 1 == omega.size()) {
      if (lo != partition.cell_lo(cell) || hi != partition.cell_hi(cell)) {
        throw LemmaViolation("final interval of " + to_string(omega) + " is not a whole cell");
      }
      break;
    }
    const auto m = cfmap::branch_map(partition.branch(cell));
    lo = projective::apply(m, lo, EndpointRole::left);
    hi = projective::apply(m, hi, EndpointRole::right);
  }
  return finish(omega, std::move(tau), artin_interval);
}

RecodeResult recode_by_blocks(const SymbolWord& omega) {
  require_recodable(omega);
  return finish(omega, blocks_recursive(omega.symbols), parry::cylinder_interval(omega));
}

bool tail_class_holds(const RecodeResult& result) {
  const int w = result.omega.symbols.back();
  const int t = result.tau.symbols.back();
  switch (w) {
    case 1:
    case 8:
      return t == w;
    case 2:
      return t == 2 || t == 4;
    case 7:
      return t == 5 || t == 7;
    default:
      return false;
  }
}

bool invariants_hold(const RecodeResult& result) {
  return result.omega.size() == result.tau.size() && result.omega.symbols.front() == result.tau.symbols.front() &&
         tail_class_holds(result);
}

bool verify_v_equality(const RecodeResult& result) {
  const auto& va = ParryModel::get(Regime::artin).eigenvector();
  const auto& vh = ParryModel::get(Regime::hurwitz).eigenvector();
  return va[result.omega.symbols.back() - 1] == vh[result.tau.symbols.back() - 1];
}

void CheckReport::fail(std::string what) {
  ++failures;
  if (!first_failure) first_failure = std::move(what);
}

CheckReport verify_rank2_table() {
  CheckReport report;
  const auto& artin = ParryModel::get(Regime::artin);
  for (const auto& m : kRank2) {
    ++report.checked;
    const SymbolWord a{Regime::artin, {m.first, m.artin_second}};
    const SymbolWord h{Regime::hurwitz, {m.first, m.hurwitz_second}};
    try {
      const auto ia = parry::cylinder_interval(a);
      const auto ih = parry::cylinder_interval(h);
      if (ia.lo != ih.lo || ia.hi != ih.hi) report.fail(to_string(a) + " and " + to_string(h) + " differ");
    } catch (const parry::InadmissibleWord& e) {
      report.fail(e.what());
    }
  }
  for (int i = 1; i <= static_cast<int>(artin.size()); ++i) {
    for (int j : artin.successors(i)) {
      const bool listed = std::any_of(kRank2.begin(), kRank2.end(),
                                      [&](const PairMatch& m) { return m.first == i && m.artin_second == j; });
      if (!listed) report.fail("Artin pair " + std::to_string(i) + std::to_string(j) + " has no match");
    }
  }
  return report;
}

CheckReport verify_block_identities() {
  CheckReport report;
  for (const auto& block : kBlocks) {
    ++report.checked;
    const SymbolWord a{Regime::artin, {block.artin.begin(), block.artin.end()}};
    const SymbolWord h{Regime::hurwitz, {block.hurwitz.begin(), block.hurwitz.end()}};
    const auto ia = parry::cylinder_interval(a);
    const auto ih = parry::cylinder_interval(h);
    if (ia.lo != ih.lo || ia.hi != ih.hi) report.fail("intervals of " + to_string(a) + " and " + to_string(h));
    if (!projective::psl_equal(ia.composed_map, ih.composed_map)) {
      report.fail("composed maps of " + to_string(a) + " and " + to_string(h));
    }
  }
  return report;
}

std::vector<SymbolWord> recodable_words(std::size_t length) {
  std::vector<SymbolWord> out;
  if (length == 0) return out;
  const auto& artin = ParryModel::get(Regime::artin);
  std::vector<int> word;
  auto extend = [&](auto& self) -> void {
    if (word.size() == length) {
      if (recodable_tail(word.back())) out.push_back({Regime::artin, word});
      return;
    }
    const auto next = word.empty() ? std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8} : artin.successors(word.back());
    for (int s : next) {
      word.push_back(s);
      self(self);
      word.pop_back();
    }
  };
  extend(extend);
  return out;
}

namespace {

CheckReport check_words(const std::vector<SymbolWord>& words, std::size_t begin, std::size_t end) {
  CheckReport report;
  for (std::size_t i = begin; i < end; ++i) {
    const auto& omega = words[i];
    ++report.checked;
    try {
      const auto tracked = recode_by_tracking(omega);
      const auto blocked = recode_by_blocks(omega);
      if (tracked.tau != blocked.tau) {
        report.fail(to_string(omega) + ": recoders disagree, " + to_string(tracked.tau) + " vs " +
                    to_string(blocked.tau));
      } else if (!invariants_hold(tracked)) {
        report.fail(to_string(omega) + ": invariants fail for " + to_string(tracked.tau));
      } else if (!verify_v_equality(tracked)) {
        report.fail(to_string(omega) + ": v-equality fails for " + to_string(tracked.tau));
      }
    } catch (const Error& e) {
      report.fail(to_string(omega) + ": " + e.what());
    }
  }
  return report;
}

}  // namespace

CheckReport exhaustive_check(std::size_t max_length, std::size_t jobs) {
  std::vector<SymbolWord> words;
  for (std::size_t len = 1; len <= max_length; ++len) {
    auto batch = recodable_words(len);
    words.insert(words.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
  }
  // Warm the shared models before threads start.
  ParryModel::get(Regime::artin);
  ParryModel::get(Regime::hurwitz);

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(1, words.size()));
  std::vector<std::future<CheckReport>> parts;
  const std::size_t chunk = (words.size() + jobs - 1) / jobs;
  for (std::size_t begin = 0; begin < words.size(); begin += chunk) {
    const std::size_t end = std::min(words.size(), begin + chunk);
    parts.push_back(std::async(std::launch::async, check_words, std::cref(words), begin, end));
  }
  CheckReport total;
  for (auto& part : parts) {
    auto r = part.get();
    total.checked += r.checked;
    total.failures += r.failures;
    if (!total.first_failure && r.first_failure) total.first_failure = r.first_failure;
  }
  return total;
}

}  // namespace cfentropy::recode
