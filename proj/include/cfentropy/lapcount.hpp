#pragma once

// Lap counting: the number of monotone pieces of f^k grows like e^{k·h_top}.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cfentropy/cfmap.hpp"

namespace cfentropy::lapcount {

using cfmap::BranchedMap;
using cfmap::Params;
using projective::ProjPoint;

class DepthTooLarge : public Error {
 public:
  using Error::Error;
};

inline constexpr std::size_t kDefaultDepth = 22;
inline constexpr std::size_t kDefaultPointCap = 10'000'000;

/// counts[k-1] = L_k = 1 + #(finite interior points of P_k), where P_1 is the
/// initial set and P_{k+1} = P_1 ∪ f⁻¹(P_k).
struct LapCountSeries {
  std::vector<std::uint64_t> counts;
  std::optional<Params> params;
};

/// General form: any branched map and initial set.
LapCountSeries lap_counts(const BranchedMap& map, const std::vector<ProjPoint>& initial, std::size_t depth,
                          std::size_t max_points = kDefaultPointCap);

/// f_{a,b} with P_1 = {a, b, ∞}.
LapCountSeries lap_counts(const Params& params, std::size_t depth, std::size_t max_points = kDefaultPointCap);

/// Slow Gauss map with P_1 = {1}.
LapCountSeries slow_gauss_lap_counts(std::size_t depth, std::size_t max_points = kDefaultPointCap);

/// All preimages of y under the branches of `map`, each lying in the cell of
/// its branch and strictly inside the domain.
std::vector<ProjPoint> preimages(const BranchedMap& map, const ProjPoint& y);

struct EntropyEstimate {
  double value = 0;
  double uncertainty = 0;
};

/// Mean of the last three log-ratios log(L_k / L_{k-1}); the uncertainty is
/// their largest deviation from that mean. Needs at least four counts.
EntropyEstimate entropy_estimate(const LapCountSeries& series);

}  // namespace cfentropy::lapcount
