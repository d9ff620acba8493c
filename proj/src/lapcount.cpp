#include "cfentropy/lapcount.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace cfentropy::lapcount {

using projective::CutPoint;

std::vector<ProjPoint> preimages(const BranchedMap& map, const ProjPoint& y) {
  std::vector<ProjPoint> out;
  const auto& branches = map.branches();
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const ProjPoint x = apply(projective::inverse(cfmap::branch_map(branches[i])), y);
    if (x.is_infinity()) continue;
    const CutPoint cx(x);
    if (!(map.domain_lo() < cx && cx < map.domain_hi())) continue;
    if (map.cell_index(cx) == i) out.push_back(x);
  }
  return out;
}

LapCountSeries lap_counts(const BranchedMap& map, const std::vector<ProjPoint>& initial, std::size_t depth,
                          std::size_t max_points) {
  if (depth == 0) throw Error("lap_counts: depth must be at least 1");
  auto interior = [&](const ProjPoint& x) {
    if (x.is_infinity()) return false;
    const CutPoint cx(x);
    return map.domain_lo() < cx && cx < map.domain_hi();
  };

  std::unordered_set<ProjPoint, projective::ProjPointHash> points(initial.begin(), initial.end());
  std::uint64_t finite = static_cast<std::uint64_t>(std::count_if(points.begin(), points.end(), interior));
  std::vector<ProjPoint> frontier(points.begin(), points.end());

  LapCountSeries series;
  series.counts.push_back(1 + finite);
  for (std::size_t level = 2; level <= depth; ++level) {
    std::vector<ProjPoint> next;
    for (const auto& y : frontier) {
      for (auto& x : preimages(map, y)) {
        if (points.insert(x).second) {
          ++finite;
          next.push_back(std::move(x));
        }
      }
    }
    if (points.size() > max_points) {
      throw DepthTooLarge("lap_counts: more than " + std::to_string(max_points) + " points at depth " +
                          std::to_string(level));
    }
    series.counts.push_back(1 + finite);
    frontier = std::move(next);
  }
  return series;
}

LapCountSeries lap_counts(const Params& params, std::size_t depth, std::size_t max_points) {
  auto series = lap_counts(cfmap::make_fab(params),
                           {ProjPoint(params.a()), ProjPoint(params.b()), ProjPoint::infinity()}, depth, max_points);
  series.params = params;
  return series;
}

LapCountSeries slow_gauss_lap_counts(std::size_t depth, std::size_t max_points) {
  return lap_counts(cfmap::make_slow_gauss(), {ProjPoint(Rational(1))}, depth, max_points);
}

EntropyEstimate entropy_estimate(const LapCountSeries& series) {
  const auto& c = series.counts;
  if (c.size() < 4) throw Error("entropy_estimate: need at least 4 lap counts");
  double logs[3];
  double mean = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t k = c.size() - 3 + i;
    logs[i] = std::log(static_cast<double>(c[k]) / static_cast<double>(c[k - 1]));
    mean += logs[i] / 3.0;
  }
  double deviation = 0;
  for (double l : logs) deviation = std::max(deviation, std::fabs(l - mean));
  return {mean, deviation};
}

}  // namespace cfentropy::lapcount
