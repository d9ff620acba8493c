#include "cfentropy/cfmap.hpp"

#include <algorithm>
#include <random>

namespace cfentropy::cfmap {

using projective::EndpointRole;

Params validate_params(const Rational& a, const Rational& b) {
  if (a > 0) throw OutOfParameterSpace("parameter constraint a <= 0 violated (a = " + cfentropy::to_string(a) + ")");
  if (b < 0) throw OutOfParameterSpace("parameter constraint b >= 0 violated (b = " + cfentropy::to_string(b) + ")");
  if (b - a < 1) throw OutOfParameterSpace("parameter constraint b - a >= 1 violated");
  if (-a * b > 1) throw OutOfParameterSpace("parameter constraint -ab <= 1 violated");
  return Params(a, b);
}

std::string to_string(const Params& params) {
  return "(" + cfentropy::to_string(params.a()) + ", " + cfentropy::to_string(params.b()) + ")";
}

MoebiusMap branch_map(BranchSymbol symbol) {
  switch (symbol) {
    case BranchSymbol::T:
      return MoebiusMap::T();
    case BranchSymbol::S:
      return MoebiusMap::S();
    case BranchSymbol::Tinv:
      return MoebiusMap::T_inverse();
    case BranchSymbol::Reciprocal:
      return MoebiusMap(BigInt(0), BigInt(1), BigInt(1), BigInt(0));
  }
  throw Error("branch_map: unknown symbol");
}

const char* to_string(BranchSymbol symbol) {
  switch (symbol) {
    case BranchSymbol::T:
      return "T";
    case BranchSymbol::S:
      return "S";
    case BranchSymbol::Tinv:
      return "Tinv";
    case BranchSymbol::Reciprocal:
      return "R";
  }
  return "?";
}

BranchedMap::BranchedMap(CutPoint domain_lo, CutPoint domain_hi, std::vector<CutPoint> breakpoints,
                         std::vector<BranchSymbol> branches)
    : lo_(std::move(domain_lo)),
      hi_(std::move(domain_hi)),
      breakpoints_(std::move(breakpoints)),
      branches_(std::move(branches)) {
  if (branches_.size() != breakpoints_.size() + 1) throw Error("BranchedMap: need one branch per cell");
  if (!std::is_sorted(breakpoints_.begin(), breakpoints_.end()) ||
      std::adjacent_find(breakpoints_.begin(), breakpoints_.end()) != breakpoints_.end()) {
    throw Error("BranchedMap: breakpoints must be strictly increasing");
  }
  for (const auto& bp : breakpoints_) {
    if (!(lo_ < bp && bp < hi_)) throw Error("BranchedMap: breakpoint outside the domain interior");
  }
  maps_.reserve(branches_.size());
  for (auto symbol : branches_) maps_.push_back(branch_map(symbol));
}

std::size_t BranchedMap::cell_index(const CutPoint& x) const {
  if (!contains(x)) throw Error("BranchedMap: point " + projective::to_string(x) + " outside the domain");
  return static_cast<std::size_t>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) -
                                  breakpoints_.begin());
}

CutPoint BranchedMap::eval(const CutPoint& x) const {
  const auto& m = maps_[cell_index(x)];
  EndpointRole role = x == hi_ ? EndpointRole::right : EndpointRole::left;
  if (m.determinant().sign() < 0) role = role == EndpointRole::left ? EndpointRole::right : EndpointRole::left;
  return apply(m, x, role);
}

ProjPoint BranchedMap::eval(const ProjPoint& x) const {
  if (x.is_infinity()) return apply(maps_.back(), x);
  return apply(maps_[cell_index(CutPoint(x))], x);
}

std::vector<MonotonePiece> BranchedMap::monotone_pieces() const {
  std::vector<MonotonePiece> pieces;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const CutPoint cell_lo = i == 0 ? lo_ : breakpoints_[i - 1];
    const CutPoint cell_hi = i == breakpoints_.size() ? hi_ : breakpoints_[i];
    const auto& m = maps_[i];
    if (m.gamma() != 0) {
      const CutPoint pole(Rational(-m.delta(), m.gamma()));
      if (cell_lo < pole && pole < cell_hi) {
        pieces.push_back({cell_lo, pole, branches_[i]});
        pieces.push_back({pole, cell_hi, branches_[i]});
        continue;
      }
    }
    pieces.push_back({cell_lo, cell_hi, branches_[i]});
  }
  return pieces;
}

BranchedMap make_fab(const Params& params) {
  return BranchedMap(CutPoint::neg_infinity(), CutPoint::pos_infinity(),
                     {CutPoint(params.a()), CutPoint(params.b())},
                     {BranchSymbol::T, BranchSymbol::S, BranchSymbol::Tinv});
}

BranchedMap make_slow_gauss() {
  return BranchedMap(CutPoint(Rational(0)), CutPoint::pos_infinity(), {CutPoint(Rational(1))},
                     {BranchSymbol::Reciprocal, BranchSymbol::Tinv});
}

ProjPoint magnitude(const ProjPoint& x) {
  if (x.is_infinity() || x.p().sign() >= 0) return x;
  return ProjPoint(BigInt(-x.p()), x.q());
}

bool factor_relation_holds_at(const ProjPoint& x) {
  static const BranchedMap artin = make_fab(validate_params(Rational(-1), Rational(1)));
  static const BranchedMap gauss = make_slow_gauss();
  return gauss.eval(magnitude(x)) == magnitude(artin.eval(x));
}

FactorReport check_factor_relation(std::size_t n_samples, std::uint64_t seed) {
  FactorReport report;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> num(-4096, 4096);
  std::uniform_int_distribution<long long> den(1, 4096);
  std::uniform_int_distribution<int> special(0, 63);
  const ProjPoint excluded(BigInt(-1), BigInt(1));

  for (std::size_t i = 0; i < n_samples; ++i) {
    ProjPoint x;
    if (special(rng) == 0) {
      x = ProjPoint::infinity();
    } else {
      do {
        x = ProjPoint(BigInt(num(rng)), BigInt(den(rng)));
      } while (x == excluded);
    }
    ++report.samples;
    if (!factor_relation_holds_at(x)) {
      report.passed = false;
      report.counterexample = projective::to_string(x);
      break;
    }
  }
  return report;
}

}  // namespace cfentropy::cfmap
