#include "cfentropy/markov.hpp"

#include "doctest.h"

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace cfentropy;
using namespace cfentropy::markov;

namespace {

Params P(long long an, long long ad, long long bn, long long bd) {
  return cfmap::validate_params(Rational(an, ad), Rational(bn, bd));
}

double eigen_spectral_radius(const TransitionMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = m(i, j);
  return Eigen::EigenSolver<Eigen::MatrixXd>(a, false).eigenvalues().cwiseAbs().maxCoeff();
}

// det(kI - M) by exact Gaussian elimination.
Rational det_shifted(const TransitionMatrix& m, long long k) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational((i == j ? k : 0) - m(i, j));
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

TransitionMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double density) {
  std::bernoulli_distribution bit(density);
  TransitionMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, bit(rng));
  return m;
}

const TransitionMatrix kArtin4({{1, 1, 0, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 0, 1, 1}});
const TransitionMatrix kMinusOneZero({{1, 1, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 1}});

}  // namespace

TEST_CASE("orbit closure of the Artin parameters") {
  const auto points = orbit_closure(P(-1, 1, 1, 1));
  REQUIRE(points.size() == 4);
  CHECK(points[0] == ProjPoint(Rational(-1)));
  CHECK(points[1] == ProjPoint(Rational(0)));
  CHECK(points[2] == ProjPoint(Rational(1)));
  CHECK(points[3].is_infinity());
}

TEST_CASE("orbit closure is forward invariant") {
  for (const auto& params : {P(-1, 2, 1, 2), P(-3, 4, 1, 2), P(-1, 1, 3, 4), P(-4, 5, 2, 3), P(-6, 5, 1, 5)}) {
    const auto f = cfmap::make_fab(params);
    const auto points = orbit_closure(params);
    for (const auto& x : points) {
      CHECK(std::find(points.begin(), points.end(), f.eval(x)) != points.end());
    }
  }
}

TEST_CASE("budget exhaustion") {
  CHECK_THROWS_AS(orbit_closure(P(-3, 4, 1, 2), Budget{3, 3}), BudgetExhausted);
  CHECK_THROWS_AS(markov_entropy(P(-3, 4, 1, 2), Budget{3, 3}), NotMarkovWithinBudget);
}

TEST_CASE("Artin transition matrix, derived by hand") {
  // Cells [-∞,-1], [-1,0], [0,1], [1,∞] under T, S, S, T⁻¹.
  const auto result = markov_entropy(P(-1, 1, 1, 1));
  CHECK(result.partition.size() == 4);
  CHECK(result.matrix == kArtin4);
  CHECK(result.spectrum.entropy() == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-12));
  CHECK(result.spectrum.entropy_lo <= result.spectrum.entropy_hi);
}

TEST_CASE("(-1, 0) transition matrix and its root") {
  const auto result = markov_entropy(P(-1, 1, 0, 1));
  CHECK(result.matrix == kMinusOneZero);
  const IntPolynomial cubic{{BigInt(-1), BigInt(0), BigInt(-1), BigInt(1)}};  // x³ - x² - 1
  CHECK(char_poly(result.matrix) == IntPolynomial{{BigInt(-1), BigInt(1)}} * cubic);
  CHECK(changes_sign(cubic, result.spectrum.rho_lo - 1e-12, result.spectrum.rho_hi + 1e-12));
  CHECK(result.spectrum.rho() == doctest::Approx(1.4655712318767680).epsilon(1e-12));
}

TEST_CASE("cycle witness for the Artin parameters") {
  // Sa = 1 ↦ 0 = Ta, and T⁻¹b = 0 while Sb = -1 ↦ 1 ↦ 0.
  const auto w = cycle_witness(P(-1, 1, 1, 1));
  REQUIRE(w.has_value());
  CHECK(*w == CycleWitness{1, 0, 0, 2});
}

TEST_CASE("partitions that are not Markov are rejected") {
  CHECK_THROWS_AS(build_partition(P(-1, 1, 1, 1), std::vector<CutPoint>{CutPoint(0, 1)}), NotMarkov);
  // Missing 0: the S cell [-1, 1] straddles the pole.
  CHECK_THROWS_AS(build_partition(P(-1, 1, 1, 1), std::vector<CutPoint>{CutPoint(-1, 1), CutPoint(1, 1)}), NotMarkov);
}

TEST_CASE("refinement keeps the spectral radius") {
  const auto params = P(-1, 1, 1, 1);
  const auto coarse = build_partition(params, orbit_closure(params));
  const auto fine = refine_partition(coarse, {CutPoint(-2, 1), CutPoint(2, 1), CutPoint(-1, 2), CutPoint(1, 2)});
  CHECK(fine.size() == 8);
  CHECK(spectral_radius(transition_matrix(fine)).rho() ==
        doctest::Approx(spectral_radius(transition_matrix(coarse)).rho()).epsilon(1e-11));
}

TEST_CASE("locate") {
  const auto partition = build_partition(P(-1, 1, 1, 1), orbit_closure(P(-1, 1, 1, 1)));
  CHECK(partition.locate(CutPoint::neg_infinity()) == 0);
  CHECK(partition.locate(CutPoint(-1, 1)) == 1);
  CHECK(partition.locate(CutPoint(1, 3)) == 2);
  CHECK(partition.locate(CutPoint::pos_infinity()) == 3);
}

TEST_CASE("spectral radius agrees with a dense eigensolver") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 2 + trial % 30;
    TransitionMatrix m = random_matrix(rng, n, trial % 3 == 0 ? 0.08 : 0.3);
    // A Hamiltonian cycle makes ρ simple, so the dense solver is accurate.
    for (std::size_t i = 0; i < n; ++i) m.set(i, (i + 1) % n, 1);
    const double reference = eigen_spectral_radius(m);
    CAPTURE(to_string(m));
    const auto s = spectral_radius(m, 1e-12);
    CHECK(s.rho_lo <= reference + 1e-9);
    CHECK(s.rho_hi >= reference - 1e-9);
    CHECK(s.rho_hi - s.rho_lo <= 1e-9);
  }
}

TEST_CASE("spectral radius of reducible matrices") {
  // Repeated eigenvalues make the dense solver lose digits, hence 1e-6.
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 2 + trial % 30;
    const TransitionMatrix m = random_matrix(rng, n, trial % 3 == 0 ? 0.08 : 0.3);
    const double reference = eigen_spectral_radius(m);
    if (reference < 0.5) {
      // Nilpotent: no cycle at all.
      CHECK_THROWS_AS(spectral_radius(m), ZeroMatrix);
      continue;
    }
    const auto s = spectral_radius(m, 1e-12);
    CHECK(s.rho() == doctest::Approx(reference).epsilon(1e-6));
  }
  // Two self-loops in a chain and a 3-cycle.
  const TransitionMatrix chain({{1, 1, 0, 0, 0}, {0, 1, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}, {0, 0, 1, 0, 0}});
  const auto s = spectral_radius(chain);
  CHECK(s.rho_lo <= 1.0);
  CHECK(s.rho_hi >= 1.0);
  CHECK(s.rho_hi - s.rho_lo <= 1e-12);
}

TEST_CASE("right eigenvector") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 12;
    TransitionMatrix m = random_matrix(rng, n, 0.35);
    for (std::size_t i = 0; i < n; ++i) m.set(i, (i + 1) % n, 1);  // irreducible
    const auto v = right_eigenvector(m);
    const double rho = eigen_spectral_radius(m);
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double mv = 0;
      for (std::size_t j = 0; j < n; ++j) mv += m(i, j) * v[j];
      CHECK(mv == doctest::Approx(rho * v[i]).epsilon(1e-8));
      CHECK(v[i] >= 0);
      sum += v[i];
    }
    CHECK(sum == doctest::Approx(1.0));
  }
}

TEST_CASE("characteristic polynomial agrees with exact determinants") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + trial % 14;
    const TransitionMatrix m = random_matrix(rng, n, 0.4);
    const IntPolynomial p = char_poly(m);
    REQUIRE(p.degree() == n);
    CHECK(p.coefficients.back() == 1);
    // Degree n is pinned down by n + 1 values.
    for (long long k = -1; k <= static_cast<long long>(n); ++k) CHECK(p(Rational(k)) == det_shifted(m, k));
  }
  // (x² - x - 1)(x² - x + 1)
  CHECK(char_poly(kArtin4) == IntPolynomial{{BigInt(-1), BigInt(-1), BigInt(1)}} * IntPolynomial{{BigInt(1), BigInt(-1), BigInt(1)}});
}

TEST_CASE("changes_sign is exact") {
  const IntPolynomial p{{BigInt(-2), BigInt(0), BigInt(1)}};  // x² - 2
  CHECK(changes_sign(p, 1.41421356237309, 1.41421356237310));
  CHECK_FALSE(changes_sign(p, 1.41421356237310, 1.5));
  CHECK_FALSE(changes_sign(p, 0.0, 1.0));
  const IntPolynomial q = p * IntPolynomial{{BigInt(-3), BigInt(1)}};
  CHECK(q.degree() == 3);
  CHECK(q(Rational(3)) == 0);
}

TEST_CASE("generic transition matrix of the slow Gauss map") {
  const auto g = cfmap::make_slow_gauss();
  const TransitionMatrix m =
      transition_matrix(g, {CutPoint(0, 1), CutPoint(1, 1), CutPoint::pos_infinity()});
  CHECK(m == TransitionMatrix({{0, 1}, {1, 1}}));
}
