#include "cfentropy/parry.hpp"

#include "doctest.h"

#include <cmath>

using namespace cfentropy;
using namespace cfentropy::parry;
using markov::TransitionMatrix;

namespace {

const TransitionMatrix kMA({{1, 1, 0, 0, 0, 0, 0, 0},
                            {0, 0, 1, 1, 0, 0, 0, 0},
                            {0, 0, 0, 0, 0, 0, 1, 0},
                            {0, 0, 0, 0, 0, 0, 0, 1},
                            {1, 0, 0, 0, 0, 0, 0, 0},
                            {0, 1, 0, 0, 0, 0, 0, 0},
                            {0, 0, 0, 0, 1, 1, 0, 0},
                            {0, 0, 0, 0, 0, 0, 1, 1}});

const TransitionMatrix kMH({{1, 1, 0, 0, 0, 0, 0, 0},
                            {0, 0, 1, 1, 0, 0, 0, 0},
                            {0, 0, 0, 0, 1, 0, 0, 0},
                            {0, 0, 0, 0, 0, 0, 0, 1},
                            {1, 0, 0, 0, 0, 0, 0, 0},
                            {0, 0, 0, 1, 0, 0, 0, 0},
                            {0, 0, 0, 0, 1, 1, 0, 0},
                            {0, 0, 0, 0, 0, 0, 1, 1}});

const QSqrt5 kLambda = QSqrt5::golden();

std::vector<QSqrt5> reference_v() {
  const QSqrt5 l = kLambda, one(1), d = QSqrt5(6) * kLambda + QSqrt5(4);
  std::vector<QSqrt5> v{l + one, l, one, l, l, one, l, l + one};
  for (auto& x : v) x = x / d;
  return v;
}

SymbolWord A(std::vector<int> s) { return {Regime::artin, std::move(s)}; }
SymbolWord H(std::vector<int> s) { return {Regime::hurwitz, std::move(s)}; }

}  // namespace

TEST_CASE("shared partition endpoints") {
  const auto e = shared_endpoints();
  REQUIRE(e.size() == 9);
  CHECK(e.front() == CutPoint::neg_infinity());
  CHECK(e[1] == CutPoint(-2, 1));
  CHECK(e[3] == CutPoint(-1, 2));
  CHECK(e[4] == CutPoint(0, 1));
  CHECK(e[7] == CutPoint(2, 1));
  CHECK(e.back() == CutPoint::pos_infinity());
}

TEST_CASE("eight-cell matrices") {
  CHECK(ParryModel::get(Regime::artin).matrix() == kMA);
  CHECK(ParryModel::get(Regime::hurwitz).matrix() == kMH);
  CHECK(ParryModel::get(Regime::artin).lambda() == kLambda);
}

TEST_CASE("exact eigenvector matches the closed form") {
  const auto v = reference_v();
  for (const TransitionMatrix* m : {&kMA, &kMH}) {
    // Independent check that the closed form is an eigenvector.
    for (std::size_t i = 0; i < 8; ++i) {
      QSqrt5 row;
      for (std::size_t j = 0; j < 8; ++j)
        if ((*m)(i, j)) row += v[j];
      CHECK(row == kLambda * v[i]);
    }
    CHECK(exact_eigenvector(*m, kLambda) == v);
  }
  CHECK(ParryModel::get(Regime::hurwitz).eigenvector() == v);
  CHECK_THROWS_AS(exact_eigenvector(kMA, QSqrt5(3)), Error);
}

TEST_CASE("admissibility and successors") {
  const auto& a = ParryModel::get(Regime::artin);
  CHECK(a.successors(3) == std::vector<int>{7});
  CHECK(a.successors(7) == std::vector<int>{5, 6});
  CHECK(ParryModel::get(Regime::hurwitz).successors(3) == std::vector<int>{5});
  CHECK(a.admissible({3, 7, 5, 1}));
  CHECK_FALSE(a.admissible({1, 3}));
}

TEST_CASE("cylinder measures") {
  const auto v = reference_v();
  CHECK(cylinder_measure(A({1})) == v[0]);
  CHECK(cylinder_measure(A({1})).to_double() == doctest::Approx(0.190983005625).epsilon(1e-10));
  CHECK(cylinder_measure(A({3, 7})) == QSqrt5(1) / (QSqrt5(6) * kLambda + QSqrt5(4)));
  CHECK(cylinder_measure(H({6, 4, 8})) == v[7] / (kLambda * kLambda));
  CHECK_THROWS_AS(cylinder_measure(A({1, 3})), InadmissibleWord);
  CHECK_THROWS_AS(cylinder_measure(A({9})), InadmissibleWord);

  std::vector<double> vd;
  for (const auto& x : v) vd.push_back(x.to_double());
  CHECK(cylinder_measure({3, 7, 5, 1}, vd, kLambda.to_double()) ==
        doctest::Approx(cylinder_measure(A({3, 7, 5, 1})).to_double()).epsilon(1e-13));
}

TEST_CASE("cylinder measures add up over successors") {
  std::mt19937_64 rng(8);
  for (auto regime : {Regime::artin, Regime::hurwitz}) {
    const auto& model = ParryModel::get(regime);
    for (int i = 0; i < 50; ++i) {
      SymbolWord w = random_admissible_word(regime, 1 + i % 7, rng);
      REQUIRE(model.admissible(w.symbols));
      QSqrt5 total;
      for (int s : model.successors(w.symbols.back())) {
        SymbolWord child = w;
        child.symbols.push_back(s);
        total += cylinder_measure(child);
      }
      CHECK(total == cylinder_measure(w));
    }
  }
}

TEST_CASE("expanding property") {
  std::mt19937_64 rng(4);
  std::vector<SymbolWord> words;
  for (int i = 0; i < 40; ++i) words.push_back(random_admissible_word(i % 2 ? Regime::artin : Regime::hurwitz, 2 + i % 9, rng));
  const auto report = expanding_property_check(words);
  CHECK(report.passed);
  CHECK(report.checked == words.size());
}

TEST_CASE("cylinder intervals") {
  // 3 = [-1, -1/2] under S goes onto 7 = [1, 2].
  const auto c = cylinder_interval(A({3, 7}));
  CHECK(c.lo == CutPoint(-1, 1));
  CHECK(c.hi == CutPoint(-1, 2));
  // 1 = [-∞, -2] under T; the cylinder (1, 1) is [-∞, -3].
  const auto c11 = cylinder_interval(A({1, 1}));
  CHECK(c11.lo == CutPoint::neg_infinity());
  CHECK(c11.hi == CutPoint(-3, 1));
  const auto h = cylinder_interval(H({3, 5}));
  CHECK(h.lo == CutPoint(-1, 1));
  CHECK(h.hi == CutPoint(-1, 2));
  CHECK(projective::apply(c.composed_map, CutPoint(1, 1), projective::EndpointRole::left) == CutPoint(-1, 1));
}

TEST_CASE("psi at partition endpoints") {
  // -1 + 2(v1 + v2) = -1/λ², -1 + 2(v1 + v2 + v3) = 2 - √5.
  const QSqrt5 at_minus_one = psi_at_endpoint(Regime::artin, 2);
  CHECK(at_minus_one == QSqrt5(-1) / (kLambda * kLambda));
  CHECK(at_minus_one.to_double() == doctest::Approx(-0.381966).epsilon(1e-6));
  CHECK(psi_at_endpoint(Regime::hurwitz, 3) == QSqrt5(Rational(2), Rational(-1)));
  CHECK(psi_at_endpoint(Regime::artin, 4) == QSqrt5(0));
  CHECK(psi_at_endpoint(Regime::hurwitz, 0) == QSqrt5(-1));
  CHECK(psi_at_endpoint(Regime::artin, 8) == QSqrt5(1));
  for (auto regime : {Regime::artin, Regime::hurwitz}) {
    const auto b = psi(regime, CutPoint(-1, 2), 30);
    CHECK(b.contains(QSqrt5(Rational(2), Rational(-1))));
    CHECK(b.width() < 1e-5);
    CHECK(b.depth == 30);
  }
}

TEST_CASE("psi is increasing and odd") {
  const auto points = random_points(60, 3);
  std::vector<CutPoint> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  double previous_hi = -1;
  for (const auto& x : sorted) {
    const auto b = psi(Regime::artin, x, 28);
    CHECK(b.lo <= b.hi);
    CHECK(b.hi >= previous_hi - 1e-12);
    previous_hi = b.hi;
    if (x.is_finite()) {
      const auto mirror = psi(Regime::artin, CutPoint(Rational(-x.value())), 28);
      CHECK(mirror.lo <= -b.lo + 1e-5);
      CHECK(mirror.hi >= -b.hi - 1e-5);
    }
  }
}

TEST_CASE("psi_A and psi_H agree on random points") {
  const auto report = psi_equality_check(random_points(100, 7), 30);
  CHECK(report.all_overlap);
  CHECK(report.points == 100);
  CHECK(report.max_width < 1e-5);
}

TEST_CASE("random points are reproducible") {
  CHECK(random_points(20, 5) == random_points(20, 5));
  CHECK(random_points(20, 5) != random_points(20, 6));
}

TEST_CASE("difference quotient of the Artin map at a same-branch pair") {
  const auto& model = ParryModel::get(Regime::artin);
  const auto f = cfmap::make_fab(regime_params(Regime::artin));
  const auto q = difference_quotient(model, f, CutPoint(-3, 1), CutPoint(-4, 1), 30);
  CHECK(q.contains_lambda);
  CHECK(q.lo <= kLambda.to_double());
  CHECK(q.hi >= kLambda.to_double());
  CHECK_THROWS_AS(difference_quotient(model, f, CutPoint(-3, 1), CutPoint(-3, 1), 30), DegeneratePair);
  const auto& hm = ParryModel::get(Regime::hurwitz);
  const auto hf = cfmap::make_fab(regime_params(Regime::hurwitz));
  CHECK(difference_quotient(hm, hf, CutPoint(1, 8), CutPoint(1, 4), 30).contains_lambda);
}

TEST_CASE("constant slope and offsets") {
  SlopeCheckOptions options;
  options.pairs = 40;
  const double l = kLambda.to_double();
  for (auto regime : {Regime::artin, Regime::hurwitz}) {
    const auto r = constant_slope_check(regime, options);
    CHECK(r.all_contain_lambda);
    CHECK(r.pairs == 40);
    CHECK(r.offsets[0].estimate() == doctest::Approx(l - 1).epsilon(1e-6));
    CHECK(r.offsets[1].estimate() == doctest::Approx(1).epsilon(1e-6));
    CHECK(r.offsets[2].estimate() == doctest::Approx(-1).epsilon(1e-6));
    CHECK(r.offsets[3].estimate() == doctest::Approx(1 - l).epsilon(1e-6));
    CHECK(r.passed());
  }
}

TEST_CASE("golden square") {
  const auto inside = cfmap::validate_params(Rational(-3, 4), Rational(3, 5));
  CHECK(in_golden_square(inside));
  CHECK(in_golden_square(regime_params(Regime::hurwitz)));
  CHECK_FALSE(in_golden_square(cfmap::validate_params(Rational(-1, 4), Rational(1))));
  SlopeCheckOptions options;
  options.pairs = 30;
  CHECK(golden_square_slope_check(inside, options).passed());
  CHECK_THROWS_AS(golden_square_slope_check(cfmap::validate_params(Rational(-1, 4), Rational(1)), options),
                  cfmap::OutOfParameterSpace);
}
