#include "cfentropy/lapcount.hpp"

#include "doctest.h"

#include <cmath>
#include <set>

using namespace cfentropy;
using namespace cfentropy::lapcount;

namespace {

Params P(long long an, long long ad, long long bn, long long bd) {
  return cfmap::validate_params(Rational(an, ad), Rational(bn, bd));
}

// Preimages of finite y under x+1 on x < a, -1/x on a <= x < b, x-1 on x >= b,
// written out directly. Preimages of ∞ are 0 (if it lies in [a, b)).
std::vector<Rational> reference_preimages(const Rational& a, const Rational& b, const std::optional<Rational>& y) {
  std::vector<Rational> out;
  if (!y) {
    if (a <= 0 && 0 < b) out.push_back(Rational(0));
    return out;
  }
  if (*y - 1 < a) out.push_back(*y - 1);
  if (*y != 0) {
    const Rational x = -1 / *y;
    if (a <= x && x < b) out.push_back(x);
  }
  if (*y + 1 >= b) out.push_back(*y + 1);
  return out;
}

std::vector<std::uint64_t> reference_counts(const Params& params, std::size_t depth) {
  std::set<Rational> finite{params.a(), params.b()};
  std::vector<std::optional<Rational>> frontier{params.a(), params.b(), std::nullopt};
  std::vector<std::uint64_t> counts{1 + finite.size()};
  for (std::size_t k = 2; k <= depth; ++k) {
    std::vector<std::optional<Rational>> next;
    for (const auto& y : frontier) {
      for (const auto& x : reference_preimages(params.a(), params.b(), y)) {
        if (finite.insert(x).second) next.emplace_back(x);
      }
    }
    counts.push_back(1 + finite.size());
    frontier = std::move(next);
  }
  return counts;
}

}  // namespace

TEST_CASE("first Artin lap counts, by hand") {
  // P_1 = {-1, 1, ∞}; P_2 adds f⁻¹ of those: -2, 0, 2.
  const auto series = lap_counts(P(-1, 1, 1, 1), 2);
  REQUIRE(series.counts.size() == 2);
  CHECK(series.counts[0] == 3);
  CHECK(series.counts[1] == 6);
  CHECK(series.params == P(-1, 1, 1, 1));
}

TEST_CASE("lap counts agree with a direct preimage enumeration") {
  for (const auto& params : {P(-1, 1, 1, 1), P(-1, 2, 1, 2), P(-3, 4, 3, 5), P(-1, 1, 0, 1), P(-5, 4, 1, 3),
                             P(0, 1, 1, 1), P(-2, 1, 1, 2), P(-7, 10, 9, 10)}) {
    CAPTURE(cfmap::to_string(params));
    CHECK(lap_counts(params, 12).counts == reference_counts(params, 12));
  }
}

TEST_CASE("preimages lie in their own branch cell") {
  const auto f = cfmap::make_fab(P(-1, 2, 1, 2));
  for (const Rational y : {Rational(0), Rational(1, 3), Rational(-5, 2), Rational(7)}) {
    for (const auto& x : preimages(f, ProjPoint(y))) CHECK(f.eval(x) == ProjPoint(y));
  }
  const auto at_infinity = preimages(f, ProjPoint::infinity());
  REQUIRE(at_infinity.size() == 1);
  CHECK(at_infinity[0] == ProjPoint(Rational(0)));
}

TEST_CASE("lap counts grow like the golden ratio for Artin") {
  const auto series = lap_counts(P(-1, 1, 1, 1), 22);
  const auto estimate = entropy_estimate(series);
  CHECK(std::fabs(estimate.value - std::log((1 + std::sqrt(5.0)) / 2)) < 0.02);
  CHECK(estimate.uncertainty < 0.05);
  for (std::size_t k = 1; k < series.counts.size(); ++k) CHECK(series.counts[k] >= series.counts[k - 1]);
}

TEST_CASE("slow Gauss lap counts") {
  // Preimages of 1: 1/1 is excluded as it equals 1; 2 under x - 1.
  const auto series = slow_gauss_lap_counts(6);
  CHECK(series.counts[0] == 2);
  CHECK(series.counts[1] == 3);
  CHECK_FALSE(series.params.has_value());
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(lap_counts(P(-1, 1, 1, 1), 30, 1000), DepthTooLarge);
  CHECK_THROWS_AS(lap_counts(P(-1, 1, 1, 1), 0), Error);
  CHECK_THROWS(entropy_estimate(lap_counts(P(-1, 1, 1, 1), 3)));
}
