#include "cfentropy/parry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cfentropy::parry {

using cfentropy::to_string;
using projective::EndpointRole;

const char* to_string(Regime regime) { return regime == Regime::artin ? "artin" : "hurwitz"; }

Params regime_params(Regime regime) {
  if (regime == Regime::artin) return cfmap::validate_params(Rational(-1), Rational(1));
  return cfmap::validate_params(Rational(-1, 2), Rational(1, 2));
}

std::string to_string(const SymbolWord& word) {
  std::ostringstream os;
  os << to_string(word.regime) << '(';
  for (std::size_t i = 0; i < word.symbols.size(); ++i) os << (i ? "," : "") << word.symbols[i];
  os << ')';
  return os.str();
}

std::vector<CutPoint> shared_endpoints() {
  return {CutPoint::neg_infinity(), CutPoint(-2, 1), CutPoint(-1, 1), CutPoint(-1, 2), CutPoint(0, 1),
          CutPoint(1, 2),           CutPoint(1, 1),  CutPoint(2, 1),  CutPoint::pos_infinity()};
}

MarkovPartition paper_partition_8(Regime regime) {
  const Params params = regime_params(regime);
  if (regime == Regime::hurwitz) {
    // The Hurwitz orbit closure is exactly the shared endpoint set.
    return markov::build_partition(params, markov::orbit_closure(params));
  }
  // Artin's own closure gives four cells; add the Hurwitz points.
  const auto minimal = markov::build_partition(params, markov::orbit_closure(params));
  return markov::refine_partition(minimal, {CutPoint(-2, 1), CutPoint(-1, 2), CutPoint(1, 2), CutPoint(2, 1)});
}

std::vector<QSqrt5> exact_eigenvector(const TransitionMatrix& m, const QSqrt5& lambda) {
  const std::size_t n = m.size();
  std::vector<std::vector<QSqrt5>> a(n, std::vector<QSqrt5>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = QSqrt5(m(i, j));
    a[i][i] -= lambda;
  }

  // Reduced row echelon form; pivot_col[r] is the pivot column of row r.
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t p = row;
    while (p < n && a[p][col].is_zero()) ++p;
    if (p == n) continue;
    std::swap(a[p], a[row]);
    const QSqrt5 pivot = a[row][col];
    for (auto& x : a[row]) x /= pivot;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      const QSqrt5 factor = a[r][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  if (pivot_col.size() != n - 1) {
    throw Error("exact_eigenvector: eigenvalue " + to_string(lambda) + " has kernel dimension " +
                std::to_string(n - pivot_col.size()));
  }

  std::size_t free_col = 0;
  for (std::size_t k = 0; k < pivot_col.size() && pivot_col[k] == free_col; ++k) ++free_col;
  std::vector<QSqrt5> v(n);
  v[free_col] = QSqrt5(1);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][free_col];

  QSqrt5 total;
  for (const auto& x : v) total += x;
  for (auto& x : v) x /= total;

  for (std::size_t i = 0; i < n; ++i) {
    QSqrt5 mv;
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j)) mv += v[j];
    }
    if (mv != lambda * v[i]) throw Error("exact_eigenvector: residual is not zero");
  }
  return v;
}

ParryModel::ParryModel(MarkovPartition partition)
    : partition_(std::move(partition)),
      matrix_(markov::transition_matrix(partition_)),
      lambda_(QSqrt5::golden()),
      inverse_lambda_(QSqrt5::golden() - QSqrt5(1)),
      v_(exact_eigenvector(matrix_, lambda_)) {}

const ParryModel& ParryModel::get(Regime regime) {
  static const ParryModel artin(paper_partition_8(Regime::artin));
  static const ParryModel hurwitz(paper_partition_8(Regime::hurwitz));
  return regime == Regime::artin ? artin : hurwitz;
}

bool ParryModel::admissible(const std::vector<int>& symbols) const {
  const int n = static_cast<int>(size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] < 1 || symbols[i] > n) return false;
    if (i > 0 && !matrix_(symbols[i - 1] - 1, symbols[i] - 1)) return false;
  }
  return !symbols.empty();
}

std::vector<int> ParryModel::successors(int symbol) const {
  std::vector<int> out;
  for (std::size_t j = 0; j < size(); ++j) {
    if (matrix_(symbol - 1, j)) out.push_back(static_cast<int>(j) + 1);
  }
  return out;
}

namespace {

const ParryModel& checked_model(const SymbolWord& word) {
  const auto& model = ParryModel::get(word.regime);
  if (!model.admissible(word.symbols)) throw InadmissibleWord("inadmissible word " + to_string(word));
  return model;
}

}  // namespace

QSqrt5 cylinder_measure(const SymbolWord& word) {
  const auto& model = checked_model(word);
  const auto n = static_cast<long long>(word.size()) - 1;
  return model.eigenvector()[word.symbols.back() - 1] * pow(model.inverse_lambda(), n);
}

double cylinder_measure(const std::vector<int>& symbols, const std::vector<double>& v, double lambda) {
  if (symbols.empty()) throw InadmissibleWord("empty word");
  const auto last = static_cast<std::size_t>(symbols.back() - 1);
  if (last >= v.size()) throw InadmissibleWord("symbol out of range");
  return v[last] / std::pow(lambda, static_cast<double>(symbols.size() - 1));
}

ExpandingReport expanding_property_check(const std::vector<SymbolWord>& words) {
  ExpandingReport report;
  for (const auto& word : words) {
    if (word.size() < 2) throw Error("expanding_property_check: word " + to_string(word) + " is too short");
    const auto& model = checked_model(word);
    SymbolWord shifted{word.regime, {word.symbols.begin() + 1, word.symbols.end()}};
    const QSqrt5 lhs = cylinder_measure(shifted);
    const QSqrt5 rhs = model.lambda() * cylinder_measure(word);
    const double error = std::abs((lhs - rhs).to_double());
    report.max_error = std::max(report.max_error, error);
    if (lhs != rhs) report.passed = false;
    ++report.checked;
  }
  return report;
}

SymbolWord random_admissible_word(Regime regime, std::size_t length, std::mt19937_64& rng) {
  const auto& model = ParryModel::get(regime);
  SymbolWord word{regime, {}};
  if (length == 0) return word;
  std::uniform_int_distribution<int> first(1, static_cast<int>(model.size()));
  word.symbols.push_back(first(rng));
  while (word.symbols.size() < length) {
    const auto next = model.successors(word.symbols.back());
    std::uniform_int_distribution<std::size_t> pick(0, next.size() - 1);
    word.symbols.push_back(next[pick(rng)]);
  }
  return word;
}

CylinderInterval cylinder_interval(const SymbolWord& word) {
  const auto& model = checked_model(word);
  const auto& partition = model.partition();
  const auto last = static_cast<std::size_t>(word.symbols.back() - 1);
  CutPoint lo = partition.cell_lo(last);
  CutPoint hi = partition.cell_hi(last);
  MoebiusMap composed = MoebiusMap::identity();
  for (std::size_t k = word.size() - 1; k-- > 0;) {
    const auto cell = static_cast<std::size_t>(word.symbols[k] - 1);
    const MoebiusMap back = projective::inverse(cfmap::branch_map(partition.branch(cell)));
    lo = projective::apply(back, lo, EndpointRole::left);
    hi = projective::apply(back, hi, EndpointRole::right);
    composed = projective::compose(back, composed);
    if (lo < partition.cell_lo(cell) || partition.cell_hi(cell) < hi || !(lo < hi)) {
      throw Error("cylinder_interval: pull-back of " + to_string(word) + " left cell " + std::to_string(cell + 1));
    }
  }
  return {word, lo, hi, composed};
}

PsiBracket psi(Regime regime, const CutPoint& x, std::size_t depth) { return psi(ParryModel::get(regime), x, depth); }

PsiBracket psi(const ParryModel& model, const CutPoint& x, std::size_t depth) {
  if (depth == 0) throw Error("psi: depth must be at least 1");
  const auto& partition = model.partition();
  const auto& v = model.eigenvector();
  const std::size_t n = model.size();

  QSqrt5 acc;
  QSqrt5 scale(1);  // λ^{-level}
  CutPoint y = x;
  std::vector<std::size_t> candidates(n);
  for (std::size_t j = 0; j < n; ++j) candidates[j] = j;
  std::size_t chosen = n;

  for (std::size_t level = 0; level < depth; ++level) {
    chosen = n;
    for (auto j : candidates) {
      if (partition.cell_lo(j) <= y && y <= partition.cell_hi(j)) chosen = j;
    }
    if (chosen == n) throw Error("psi: itinerary of " + projective::to_string(x) + " left the partition");
    QSqrt5 left;
    for (auto j : candidates) {
      if (j < chosen) left += v[j];
    }
    acc += left * scale;
    if (level + 1 == depth) break;

    const auto role = y == partition.cell_hi(chosen) ? EndpointRole::right : EndpointRole::left;
    y = projective::apply(cfmap::branch_map(partition.branch(chosen)), y, role);
    candidates.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (model.matrix()(chosen, j)) candidates.push_back(j);
    }
    scale *= model.inverse_lambda();
  }

  PsiBracket bracket;
  bracket.exact_lo = QSqrt5(-1) + QSqrt5(2) * acc;
  bracket.exact_hi = QSqrt5(-1) + QSqrt5(2) * (acc + v[chosen] * scale);
  bracket.lo = bracket.exact_lo.to_double();
  bracket.hi = bracket.exact_hi.to_double();
  bracket.depth = depth;
  return bracket;
}

QSqrt5 psi_at_endpoint(Regime regime, std::size_t i) {
  const auto& v = ParryModel::get(regime).eigenvector();
  if (i > v.size()) throw Error("psi_at_endpoint: index out of range");
  QSqrt5 sum;
  for (std::size_t j = 0; j < i; ++j) sum += v[j];
  return QSqrt5(-1) + QSqrt5(2) * sum;
}

PsiEqualityReport psi_equality_check(const std::vector<CutPoint>& points, std::size_t depth) {
  PsiEqualityReport report;
  for (const auto& x : points) {
    const auto a = psi(Regime::artin, x, depth);
    const auto h = psi(Regime::hurwitz, x, depth);
    const QSqrt5& lo = std::max(a.exact_lo, h.exact_lo);
    const QSqrt5& hi = std::min(a.exact_hi, h.exact_hi);
    if (hi < lo) {
      report.all_overlap = false;
      report.max_gap = std::max(report.max_gap, (lo - hi).to_double());
    }
    report.max_width = std::max({report.max_width, a.width(), h.width()});
    ++report.points;
  }
  return report;
}

std::vector<CutPoint> random_points(std::size_t count, std::uint64_t seed) {
  constexpr long long kScale = 1LL << 20;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> dist(-kScale + 1, kScale - 1);
  std::vector<CutPoint> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    points.push_back(projective::decompactify(Rational(BigInt(dist(rng)), BigInt(kScale))));
  }
  return points;
}

namespace {

struct ExactInterval {
  QSqrt5 lo;
  QSqrt5 hi;
};

QuotientBracket quotient_bracket(const ExactInterval& num, const ExactInterval& den, const QSqrt5& lambda) {
  // den.lo > 0 is guaranteed by the caller.
  QuotientBracket q;
  const double nlo = num.lo.to_double(), nhi = num.hi.to_double();
  const double dlo = den.lo.to_double(), dhi = den.hi.to_double();
  q.lo = std::min(nlo / dlo, nlo / dhi);
  q.hi = std::max(nhi / dlo, nhi / dhi);
  const bool above_lo = num.lo.sign() <= 0 || num.lo <= lambda * den.hi;
  const bool below_hi = num.hi.sign() >= 0 && lambda * den.lo <= num.hi;
  q.contains_lambda = above_lo && below_hi;
  return q;
}

}  // namespace

QuotientBracket difference_quotient(const ParryModel& model, const cfmap::BranchedMap& f, const CutPoint& x,
                                    const CutPoint& y, std::size_t depth) {
  const CutPoint& lo = std::min(x, y);
  const CutPoint& hi = std::max(x, y);
  const auto px = psi(model, lo, depth);
  const auto py = psi(model, hi, depth);
  if (!(px.exact_hi < py.exact_lo)) {
    throw DegeneratePair("psi brackets of " + projective::to_string(lo) + " and " + projective::to_string(hi) +
                         " overlap at depth " + std::to_string(depth));
  }
  const auto pfx = psi(model, f.eval(lo), depth);
  const auto pfy = psi(model, f.eval(hi), depth);
  return quotient_bracket({pfy.exact_lo - pfx.exact_hi, pfy.exact_hi - pfx.exact_lo},
                          {py.exact_lo - px.exact_hi, py.exact_hi - px.exact_lo}, model.lambda());
}

namespace {

/// Point strictly inside (lo, hi), uniform in compactified coordinates.
CutPoint sample_inside(const CutPoint& lo, const CutPoint& hi, std::mt19937_64& rng) {
  constexpr long long kSteps = 1LL << 20;
  std::uniform_int_distribution<long long> dist(1, kSteps - 1);
  const Rational u = projective::compactify(lo);
  const Rational w = projective::compactify(hi);
  return projective::decompactify(u + (w - u) * Rational(BigInt(dist(rng)), BigInt(kSteps)));
}

struct OffsetPiece {
  CutPoint lo;
  CutPoint hi;
  MoebiusMap generator;
  QSqrt5 expected;
};

std::vector<OffsetPiece> offset_pieces(const QSqrt5& lambda) {
  return {
      {CutPoint::neg_infinity(), CutPoint(-1, 2), MoebiusMap::T(), lambda - QSqrt5(1)},
      {CutPoint(-1, 1), CutPoint(0, 1), MoebiusMap::S(), QSqrt5(1)},
      {CutPoint(0, 1), CutPoint(1, 1), MoebiusMap::S(), QSqrt5(-1)},
      {CutPoint(1, 2), CutPoint::pos_infinity(), MoebiusMap::T_inverse(), QSqrt5(1) - lambda},
  };
}

constexpr double kOffsetTolerance = 1e-5;

SlopeReport slope_check(const ParryModel& model, const cfmap::BranchedMap& f, const SlopeCheckOptions& options) {
  SlopeReport report;
  std::mt19937_64 rng(options.seed);
  const auto pieces = f.monotone_pieces();

  for (std::size_t k = 0; k < options.pairs; ++k) {
    const auto& piece = pieces[k % pieces.size()];
    for (;;) {
      const CutPoint x = sample_inside(piece.lo, piece.hi, rng);
      const CutPoint y = sample_inside(piece.lo, piece.hi, rng);
      const double gap = std::abs(psi(model, x, options.depth).lo - psi(model, y, options.depth).lo);
      if (gap < options.min_separation) {
        ++report.resampled;
        continue;
      }
      const auto q = difference_quotient(model, f, x, y, options.depth);
      report.max_quotient_width = std::max(report.max_quotient_width, q.hi - q.lo);
      report.worst_midpoint_error =
          std::max(report.worst_midpoint_error, std::abs(0.5 * (q.lo + q.hi) - model.lambda().to_double()));
      if (!q.contains_lambda) report.all_contain_lambda = false;
      ++report.pairs;
      break;
    }
  }

  const auto offsets = offset_pieces(model.lambda());
  const std::size_t per_piece = std::max<std::size_t>(1, options.pairs / offsets.size());
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const auto& piece = offsets[i];
    QSqrt5 lo, hi;
    for (std::size_t s = 0; s < per_piece; ++s) {
      const CutPoint x = sample_inside(piece.lo, piece.hi, rng);
      const auto px = psi(model, x, options.depth);
      const auto pgx = psi(model, projective::apply(piece.generator, x, EndpointRole::left), options.depth);
      const QSqrt5 sample_lo = pgx.exact_lo - model.lambda() * px.exact_hi;
      const QSqrt5 sample_hi = pgx.exact_hi - model.lambda() * px.exact_lo;
      lo = s == 0 ? sample_lo : std::max(lo, sample_lo);
      hi = s == 0 ? sample_hi : std::min(hi, sample_hi);
    }
    auto& estimate = report.offsets[i];
    estimate.expected = piece.expected.to_double();
    estimate.lo = lo.to_double();
    estimate.hi = hi.to_double();
    const bool consistent = lo <= piece.expected && piece.expected <= hi;
    if (!consistent || std::abs(estimate.estimate() - estimate.expected) > kOffsetTolerance) {
      report.offsets_ok = false;
    }
  }
  return report;
}

}  // namespace

SlopeReport constant_slope_check(Regime regime, const SlopeCheckOptions& options) {
  return slope_check(ParryModel::get(regime), cfmap::make_fab(regime_params(regime)), options);
}

bool in_golden_square(const Params& params) {
  return Rational(-1) <= params.a() && params.a() <= Rational(-1, 2) && Rational(1, 2) <= params.b() &&
         params.b() <= Rational(1);
}

SlopeReport golden_square_slope_check(const Params& params, const SlopeCheckOptions& options) {
  if (!in_golden_square(params)) {
    throw cfmap::OutOfParameterSpace("golden_square_slope_check: " + cfmap::to_string(params) +
                                     " is outside [-1, -1/2] x [1/2, 1]");
  }
  return slope_check(ParryModel::get(Regime::artin), cfmap::make_fab(params), options);
}

}  // namespace cfentropy::parry
