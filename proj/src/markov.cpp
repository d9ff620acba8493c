#include "cfentropy/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cfentropy::markov {

using projective::EndpointRole;
using projective::MoebiusMap;

namespace {

CutPoint as_cut(const ProjPoint& x) { return CutPoint(x, EndpointRole::right); }

std::vector<ProjPoint> seeds(const Params& params) {
  const ProjPoint a(params.a());
  const ProjPoint b(params.b());
  std::vector<ProjPoint> out{
      a,
      b,
      apply(MoebiusMap::T(), a),
      apply(MoebiusMap::S(), a),
      apply(MoebiusMap::S(), b),
      apply(MoebiusMap::T_inverse(), b),
      ProjPoint::infinity(),
  };
  // 0 is where the S branch crosses the cut at ∞.
  if (params.a() < 0 && params.b() > 0) out.emplace_back();
  return out;
}

std::vector<ProjPoint> orbit(const cfmap::BranchedMap& f, ProjPoint x, std::size_t max_iter) {
  std::vector<ProjPoint> out;
  std::unordered_set<ProjPoint, projective::ProjPointHash> seen;
  while (out.size() <= max_iter && seen.insert(x).second) {
    out.push_back(x);
    x = f.eval(x);
  }
  return out;
}

// Smallest (m + k, then m) with f^m(x) = f^k(y).
std::optional<std::pair<std::size_t, std::size_t>> first_match(const std::vector<ProjPoint>& x_orbit,
                                                                const std::vector<ProjPoint>& y_orbit) {
  std::unordered_map<ProjPoint, std::size_t, projective::ProjPointHash> first_index;
  for (std::size_t k = 0; k < y_orbit.size(); ++k) first_index.emplace(y_orbit[k], k);
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t m = 0; m < x_orbit.size(); ++m) {
    const auto it = first_index.find(x_orbit[m]);
    if (it == first_index.end()) continue;
    if (!best || m + it->second < best->first + best->second) best = std::make_pair(m, it->second);
  }
  return best;
}

}  // namespace

std::vector<ProjPoint> orbit_closure(const Params& params, Budget budget) {
  const auto f = cfmap::make_fab(params);
  std::unordered_set<ProjPoint, projective::ProjPointHash> closure;
  for (ProjPoint x : seeds(params)) {
    std::size_t steps = 0;
    while (!closure.contains(x)) {
      closure.insert(x);
      if (closure.size() > budget.max_points) {
        throw BudgetExhausted("orbit closure of " + cfmap::to_string(params) + " exceeds " +
                                  std::to_string(budget.max_points) + " points",
                              budget);
      }
      if (++steps > budget.max_iter) {
        throw BudgetExhausted("orbit in " + cfmap::to_string(params) + " does not close within " +
                                  std::to_string(budget.max_iter) + " iterations",
                              budget);
      }
      x = f.eval(x);
    }
  }
  std::vector<ProjPoint> out(closure.begin(), closure.end());
  std::sort(out.begin(), out.end(), [](const ProjPoint& x, const ProjPoint& y) { return as_cut(x) < as_cut(y); });
  return out;
}

std::optional<CycleWitness> cycle_witness(const Params& params, std::size_t max_iter) {
  const auto f = cfmap::make_fab(params);
  const ProjPoint a(params.a());
  const ProjPoint b(params.b());
  const auto at_a = first_match(orbit(f, apply(MoebiusMap::S(), a), max_iter),
                                orbit(f, apply(MoebiusMap::T(), a), max_iter));
  const auto at_b = first_match(orbit(f, apply(MoebiusMap::T_inverse(), b), max_iter),
                                orbit(f, apply(MoebiusMap::S(), b), max_iter));
  if (!at_a || !at_b) return std::nullopt;
  return CycleWitness{at_a->first, at_a->second, at_b->first, at_b->second};
}

MarkovPartition::MarkovPartition(Params params, std::vector<CutPoint> endpoints)
    : params_(std::move(params)), endpoints_(std::move(endpoints)) {
  const auto f = cfmap::make_fab(params_);
  const auto pieces = f.monotone_pieces();
  const std::size_t n = endpoints_.size() - 1;

  auto index_of = [&](const CutPoint& x) -> std::optional<std::size_t> {
    const auto it = std::lower_bound(endpoints_.begin(), endpoints_.end(), x);
    if (it == endpoints_.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - endpoints_.begin());
  };

  for (const auto& piece : pieces) {
    if (!index_of(piece.lo) || !index_of(piece.hi)) {
      const CutPoint missing = index_of(piece.lo) ? piece.hi : piece.lo;
      throw NotMarkov("breakpoint " + projective::to_string(missing) + " lies inside a cell", locate(missing));
    }
  }

  branches_.reserve(n);
  image_lo_.reserve(n);
  image_hi_.reserve(n);
  auto piece = pieces.begin();
  for (std::size_t i = 0; i < n; ++i) {
    while (piece->hi <= endpoints_[i]) ++piece;
    const MoebiusMap m = cfmap::branch_map(piece->symbol);
    const auto lo = index_of(apply(m, endpoints_[i], EndpointRole::left));
    const auto hi = index_of(apply(m, endpoints_[i + 1], EndpointRole::right));
    if (!lo || !hi || *lo >= *hi) {
      throw NotMarkov("image of cell " + std::to_string(i) + " [" + projective::to_string(endpoints_[i]) + ", " +
                          projective::to_string(endpoints_[i + 1]) + "] is not a union of cells",
                      i);
    }
    branches_.push_back(piece->symbol);
    image_lo_.push_back(*lo);
    image_hi_.push_back(*hi);
  }
}

std::size_t MarkovPartition::locate(const CutPoint& x) const {
  const auto it = std::upper_bound(endpoints_.begin(), endpoints_.end() - 1, x);
  if (it == endpoints_.begin()) return 0;
  return std::min(static_cast<std::size_t>(it - endpoints_.begin()) - 1, endpoints_.size() - 2);
}

MarkovPartition build_partition(const Params& params, const std::vector<CutPoint>& points) {
  std::vector<CutPoint> endpoints;
  endpoints.reserve(points.size() + 2);
  endpoints.push_back(CutPoint::neg_infinity());
  for (const auto& x : points) {
    if (x.is_finite()) endpoints.push_back(x);
  }
  endpoints.push_back(CutPoint::pos_infinity());
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
  return MarkovPartition(params, std::move(endpoints));
}

MarkovPartition build_partition(const Params& params, const std::vector<ProjPoint>& points) {
  std::vector<CutPoint> cut;
  cut.reserve(points.size());
  for (const auto& x : points) {
    if (!x.is_infinity()) cut.emplace_back(x);
  }
  return build_partition(params, cut);
}

MarkovPartition refine_partition(const MarkovPartition& partition, const std::vector<CutPoint>& extra) {
  std::vector<CutPoint> points = partition.endpoints();
  points.insert(points.end(), extra.begin(), extra.end());
  return build_partition(partition.params(), points);
}

TransitionMatrix::TransitionMatrix(const std::vector<std::vector<int>>& rows) : TransitionMatrix(rows.size()) {
  for (std::size_t i = 0; i < n_; ++i) {
    if (rows[i].size() != n_) throw Error("TransitionMatrix: rows must form a square matrix");
    for (std::size_t j = 0; j < n_; ++j) set(i, j, rows[i][j]);
  }
}

std::string to_string(const TransitionMatrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os.str();
}

TransitionMatrix transition_matrix(const MarkovPartition& partition) {
  TransitionMatrix m(partition.size());
  for (std::size_t i = 0; i < partition.size(); ++i) {
    for (std::size_t j = partition.image_first(i); j <= partition.image_last(i); ++j) m.set(i, j, 1);
  }
  return m;
}

TransitionMatrix transition_matrix(const cfmap::BranchedMap& map, const std::vector<CutPoint>& endpoints) {
  if (endpoints.size() < 2 || endpoints.front() != map.domain_lo() || endpoints.back() != map.domain_hi() ||
      !std::is_sorted(endpoints.begin(), endpoints.end())) {
    throw Error("transition_matrix: endpoints must be sorted and span the domain");
  }
  const auto pieces = map.monotone_pieces();
  const std::size_t n = endpoints.size() - 1;
  auto index_of = [&](const CutPoint& x) -> std::optional<std::size_t> {
    const auto it = std::lower_bound(endpoints.begin(), endpoints.end(), x);
    if (it == endpoints.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - endpoints.begin());
  };

  TransitionMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto piece = std::find_if(pieces.begin(), pieces.end(), [&](const cfmap::MonotonePiece& p) {
      return p.lo <= endpoints[i] && endpoints[i + 1] <= p.hi;
    });
    if (piece == pieces.end()) throw NotMarkov("cell " + std::to_string(i) + " straddles a breakpoint", i);
    const MoebiusMap g = cfmap::branch_map(piece->symbol);
    const bool increasing = g.determinant() > 0;
    auto lo = index_of(apply(g, endpoints[i], increasing ? EndpointRole::left : EndpointRole::right));
    auto hi = index_of(apply(g, endpoints[i + 1], increasing ? EndpointRole::right : EndpointRole::left));
    if (lo && hi && *hi < *lo) std::swap(lo, hi);
    if (!lo || !hi || *lo == *hi) throw NotMarkov("image of cell " + std::to_string(i) + " is not a union of cells", i);
    for (std::size_t j = *lo; j < *hi; ++j) m.set(i, j, 1);
  }
  return m;
}

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

Adjacency adjacency(const TransitionMatrix& m) {
  Adjacency adj(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m(i, j)) adj[i].push_back(j);
    }
  }
  return adj;
}

// Tarjan's algorithm, iterative.
std::vector<std::vector<std::size_t>> strongly_connected_components(const Adjacency& adj) {
  constexpr auto unvisited = std::numeric_limits<std::size_t>::max();
  const std::size_t n = adj.size();
  std::vector<std::size_t> index(n, unvisited), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  struct Frame {
    std::size_t node;
    std::size_t next_edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& frame = call.back();
      const std::size_t v = frame.node;
      if (frame.next_edge < adj[v].size()) {
        const std::size_t w = adj[v][frame.next_edge++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> component;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
    }
  }
  return components;
}

struct Bracket {
  double lo;
  double hi;
  std::size_t iterations;
};

constexpr std::size_t kMaxPowerIterations = 2'000'000;

// Collatz–Wielandt bracketing for an irreducible component. Iterating I + M
// instead of M makes the component primitive without changing eigenvectors.
Bracket component_radius(const Adjacency& adj, const std::vector<std::size_t>& component, double tol) {
  const std::size_t n = component.size();
  std::vector<std::size_t> local(adj.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < n; ++i) local[component[i]] = i;
  std::vector<std::vector<std::size_t>> sub(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j : adj[component[i]]) {
      if (local[j] < n) sub[i].push_back(local[j]);
    }
  }
  if (n == 1) return {1.0, 1.0, 0};  // a single self-loop

  // (Mx)_i sums at most n terms; widen by the accumulated rounding error.
  const double slack = 4.0 * static_cast<double>(n + 2) * std::numeric_limits<double>::epsilon();
  std::vector<double> x(n, 1.0), y(n);
  for (std::size_t it = 1; it <= kMaxPowerIterations; ++it) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];
      for (auto j : sub[i]) s += x[j];
      y[i] = s;
      const double r = s / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      norm = std::max(norm, s);
    }
    lo = (lo - 1.0) * (1.0 - slack) - slack;
    hi = (hi - 1.0) * (1.0 + slack) + slack;
    // Rounding puts a floor under the achievable width.
    if (hi - lo <= std::max(tol, 8.0 * slack * hi)) return {lo, hi, it};
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
  }
  throw ConvergenceFailure("spectral_radius: no convergence within the iteration cap");
}

}  // namespace

SpectrumResult spectral_radius(const TransitionMatrix& m, double tol) {
  if (m.size() == 0) throw ZeroMatrix("spectral_radius: empty matrix");
  const auto adj = adjacency(m);
  SpectrumResult result;
  bool any_cycle = false;
  for (const auto& component : strongly_connected_components(adj)) {
    const bool nontrivial = component.size() > 1 || m(component[0], component[0]) != 0;
    if (!nontrivial) continue;
    const auto b = component_radius(adj, component, tol);
    result.rho_lo = std::max(result.rho_lo, b.lo);
    result.rho_hi = std::max(result.rho_hi, b.hi);
    result.iterations += b.iterations;
    any_cycle = true;
  }
  if (!any_cycle) {
    result.entropy_lo = result.entropy_hi = -std::numeric_limits<double>::infinity();
    throw ZeroMatrix("spectral_radius: matrix is nilpotent (no cycles); entropy is -inf");
  }
  result.entropy_lo = std::log(result.rho_lo);
  result.entropy_hi = std::log(result.rho_hi);
  return result;
}

std::vector<double> right_eigenvector(const TransitionMatrix& m, double tol) {
  const std::size_t n = m.size();
  if (n == 0) throw ZeroMatrix("right_eigenvector: empty matrix");
  const auto adj = adjacency(m);
  const double rho = spectral_radius(m, 1e-13).rho();
  std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n);
  for (std::size_t it = 0; it < kMaxPowerIterations; ++it) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];
      for (auto j : adj[i]) s += x[j];
      y[i] = s;
      total += s;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= total;
      change = std::max(change, std::fabs(y[i] - x[i]));
    }
    x.swap(y);
    if (change <= tol) {
      double residual = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (auto j : adj[i]) s += x[j];
        residual = std::max(residual, std::fabs(s - rho * x[i]));
      }
      if (residual <= 100.0 * tol * std::max(1.0, rho)) return x;
    }
  }
  throw ConvergenceFailure("right_eigenvector: power iteration did not converge");
}

Rational IntPolynomial::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPolynomial operator*(const IntPolynomial& p, const IntPolynomial& q) {
  if (p.coefficients.empty() || q.coefficients.empty()) return {};
  IntPolynomial r{std::vector<BigInt>(p.coefficients.size() + q.coefficients.size() - 1, BigInt(0))};
  for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
    for (std::size_t j = 0; j < q.coefficients.size(); ++j) r.coefficients[i + j] += p.coefficients[i] * q.coefficients[j];
  }
  return r;
}

std::string to_string(const IntPolynomial& p) {
  std::string out;
  for (std::size_t k = p.coefficients.size(); k-- > 0;) {
    const BigInt& c = p.coefficients[k];
    if (c == 0) continue;
    const bool negative = c < 0;
    const BigInt magnitude = negative ? BigInt(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (magnitude != 1 || k == 0) out += magnitude.str();
    if (k >= 1) out += "x";
    if (k >= 2) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

IntPolynomial char_poly(const TransitionMatrix& m) {
  const std::size_t n = m.size();
  if (n > 64) throw DimensionTooLarge("char_poly: dimension " + std::to_string(n) + " exceeds 64");
  using Matrix = std::vector<BigInt>;
  auto times_a = [&](const Matrix& b) {
    Matrix out(n * n, BigInt(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!m(i, k)) continue;
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] += b[k * n + j];
      }
    }
    return out;
  };

  // Faddeev–LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  std::vector<BigInt> c(n + 1, BigInt(0));
  c[n] = 1;
  Matrix mk(n * n, BigInt(0));
  for (std::size_t k = 1; k <= n; ++k) {
    mk = times_a(mk);
    for (std::size_t i = 0; i < n; ++i) mk[i * n + i] += c[n - k + 1];
    const Matrix amk = times_a(mk);
    BigInt trace(0);
    for (std::size_t i = 0; i < n; ++i) trace += amk[i * n + i];
    c[n - k] = -trace / static_cast<long long>(k);
  }
  return IntPolynomial{std::move(c)};
}

bool changes_sign(const IntPolynomial& p, double lo, double hi) {
  const Rational at_lo = p(from_double(lo));
  const Rational at_hi = p(from_double(hi));
  return at_lo.sign() * at_hi.sign() < 0;
}

MarkovEntropy markov_entropy(const Params& params, Budget budget, double tol) {
  std::vector<ProjPoint> points;
  try {
    points = orbit_closure(params, budget);
  } catch (const BudgetExhausted& e) {
    throw NotMarkovWithinBudget(e.what(), budget);
  }
  auto partition = build_partition(params, points);
  auto matrix = transition_matrix(partition);
  auto spectrum = spectral_radius(matrix, tol);
  return MarkovEntropy{spectrum, std::move(partition), std::move(matrix)};
}

}  // namespace cfentropy::markov
