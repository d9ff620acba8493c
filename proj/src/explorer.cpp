#include "cfentropy/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "cfentropy/parry.hpp"
#include "cfentropy/recode.hpp"

namespace cfentropy::explorer {

using nlohmann::json;
using cfentropy::to_string;

Method parse_method(const std::string& name) {
  if (name == "auto") return Method::automatic;
  if (name == "markov") return Method::markov_only;
  if (name == "lapcount") return Method::lapcount_only;
  throw ParseError("unknown method '" + name + "' (expected auto, markov or lapcount)");
}

const char* to_string(RecordMethod method) { return method == RecordMethod::markov ? "markov" : "lapcount"; }

double log_golden() { return std::log((1.0 + std::sqrt(5.0)) / 2.0); }

double log_kappa() {
  double k = 1.5;
  for (int i = 0; i < 60; ++i) k -= (k * k * k - k * k - 1.0) / (3.0 * k * k - 2.0 * k);
  return std::log(k);
}

EntropyRecord compute_entropy(const Params& params, const EntropyOptions& options) {
  EntropyRecord record;
  record.a = params.a();
  record.b = params.b();
  record.cycle_witness = markov::cycle_witness(params, options.cycle_iter);

  if (options.method != Method::lapcount_only) {
    try {
      const auto result = markov::markov_entropy(params, options.budget, options.tol);
      record.entropy = result.spectrum.entropy();
      record.uncertainty = 0.5 * (result.spectrum.entropy_hi - result.spectrum.entropy_lo);
      record.method = RecordMethod::markov;
      record.matrix_size = result.matrix.size();
      return record;
    } catch (const markov::NotMarkovWithinBudget&) {
      if (options.method == Method::markov_only) throw;
    }
  }
  const auto estimate = lapcount::entropy_estimate(lapcount::lap_counts(params, options.depth, options.max_points));
  record.entropy = estimate.value;
  record.uncertainty = estimate.uncertainty;
  record.method = RecordMethod::lapcount;
  return record;
}

namespace {

struct Outcome {
  std::optional<EntropyRecord> record;
  std::string reason;
};

std::vector<Outcome> evaluate_all(const std::vector<std::pair<Rational, Rational>>& points,
                                  const EntropyOptions& options, std::size_t jobs) {
  std::vector<Outcome> outcomes(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      const auto& [a, b] = points[i];
      try {
        outcomes[i].record = compute_entropy(cfmap::validate_params(a, b), options);
      } catch (const Error& e) {
        outcomes[i].reason = e.what();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(1, points.size()));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  return outcomes;
}

std::vector<Rational> grid(const Range& range, const Rational& step) {
  if (step <= 0) throw Error("sweep step must be positive");
  if (range.hi < range.lo) throw Error("sweep range is empty");
  std::vector<Rational> out;
  for (Rational x = range.lo; x <= range.hi; x += step) out.push_back(x);
  return out;
}

}  // namespace

SweepResult run_points(const std::vector<std::pair<Rational, Rational>>& points, const EntropyOptions& options,
                       std::size_t jobs) {
  const auto outcomes = evaluate_all(points, options, jobs);
  SweepResult result;
  result.grid_points = points.size();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (outcomes[i].record) {
      result.records.push_back(*outcomes[i].record);
    } else {
      result.skipped.push_back({points[i].first, points[i].second, outcomes[i].reason});
    }
  }
  return result;
}

SweepResult run_sweep(const SweepSpec& spec) {
  std::vector<std::pair<Rational, Rational>> points;
  std::vector<SkippedPoint> too_fine;
  const BigInt limit(spec.max_denominator);
  for (const auto& a : grid(spec.a, spec.step)) {
    for (const auto& b : grid(spec.b, spec.step)) {
      if (denominator(a) > limit || denominator(b) > limit) {
        too_fine.push_back({a, b, "denominator exceeds " + std::to_string(spec.max_denominator)});
      } else {
        points.emplace_back(a, b);
      }
    }
  }
  auto result = run_points(points, spec.options, spec.jobs);
  if (!too_fine.empty()) {
    result.grid_points += too_fine.size();
    result.skipped.insert(result.skipped.end(), too_fine.begin(), too_fine.end());
    std::sort(result.skipped.begin(), result.skipped.end(), [](const SkippedPoint& x, const SkippedPoint& y) {
      return x.a < y.a || (x.a == y.a && x.b < y.b);
    });
  }
  return result;
}

SweepSpec surface_spec() {
  SweepSpec spec;
  spec.a = {Rational(-5, 4), Rational(0)};
  spec.b = {Rational(0), Rational(5, 4)};
  spec.step = Rational(1, 20);
  return spec;
}

std::vector<Rational> fixed_b_values() { return {Rational(2, 5), Rational(1, 3), Rational(1, 4)}; }

std::vector<std::string> preset_names() { return {"surface", "fixed-b", "families"}; }

SweepResult run_preset(const std::string& name, const EntropyOptions& options, std::size_t jobs) {
  std::vector<std::pair<Rational, Rational>> points;
  if (name == "surface") {
    auto spec = surface_spec();
    spec.options = options;
    spec.jobs = jobs;
    return run_sweep(spec);
  } else if (name == "fixed-b") {
    // a from -5/4 up to the edge b - 1 of the parameter space.
    for (const auto& b : fixed_b_values()) {
      for (const auto& a : grid({Rational(-5, 4), b - 1}, Rational(1, 60))) points.emplace_back(a, b);
    }
  } else if (name == "families") {
    // h(f_{b-1,b}) and h(f_{-1,b}) for b in [0, 1].
    for (const auto& b : grid({Rational(0), Rational(1)}, Rational(1, 40))) {
      points.emplace_back(b - 1, b);
      if (b != 0) points.emplace_back(Rational(-1), b);
    }
  } else {
    throw UnknownPreset("unknown preset '" + name + "' (expected surface, fixed-b or families)");
  }
  std::sort(points.begin(), points.end());
  return run_points(points, options, jobs);
}

void write_csv(std::ostream& os, const std::vector<EntropyRecord>& records) {
  os << "a_num,a_den,b_num,b_den,entropy,uncertainty,method,matrix_size,m_a,k_a,m_b,k_b\n";
  for (const auto& r : records) {
    os << numerator(r.a) << ',' << denominator(r.a) << ',' << numerator(r.b) << ',' << denominator(r.b) << ','
       << format_significant(r.entropy) << ',' << format_significant(r.uncertainty) << ',' << to_string(r.method)
       << ',';
    if (r.matrix_size) os << *r.matrix_size;
    os << ',';
    if (r.cycle_witness) {
      const auto& w = *r.cycle_witness;
      os << w.m_a << ',' << w.k_a << ',' << w.m_b << ',' << w.k_b;
    } else {
      os << ",,,";
    }
    os << '\n';
  }
}

json to_json(const EntropyRecord& r) {
  json j{{"a", to_string(r.a)},
         {"b", to_string(r.b)},
         {"entropy", r.entropy},
         {"uncertainty", r.uncertainty},
         {"method", to_string(r.method)}};
  j["matrix_size"] = r.matrix_size ? json(*r.matrix_size) : json(nullptr);
  if (r.cycle_witness) {
    const auto& w = *r.cycle_witness;
    j["cycle_witness"] = {{"m_a", w.m_a}, {"k_a", w.k_a}, {"m_b", w.m_b}, {"k_b", w.k_b}};
  } else {
    j["cycle_witness"] = nullptr;
  }
  return j;
}

json to_json(const SweepResult& result) {
  json records = json::array();
  for (const auto& r : result.records) records.push_back(to_json(r));
  json skipped = json::array();
  for (const auto& s : result.skipped) {
    skipped.push_back({{"a", to_string(s.a)}, {"b", to_string(s.b)}, {"reason", s.reason}});
  }
  return {{"grid_points", result.grid_points}, {"records", records}, {"skipped", skipped}};
}

BoundCheck bound_check(const std::vector<EntropyRecord>& records) {
  BoundCheck check;
  const double lo = log_kappa();
  const double hi = log_golden();
  for (const auto& r : records) {
    const double excess = std::max(lo - r.uncertainty - r.entropy, r.entropy - hi - r.uncertainty);
    if (excess > 0) {
      ++check.violations;
      check.worst_excess = std::max(check.worst_excess, excess);
    }
  }
  return check;
}

namespace {

std::map<Rational, std::vector<const EntropyRecord*>> by_b(const std::vector<EntropyRecord>& records) {
  std::map<Rational, std::vector<const EntropyRecord*>> slices;
  for (const auto& r : records) slices[r.b].push_back(&r);
  for (auto& [b, slice] : slices) {
    std::sort(slice.begin(), slice.end(), [](auto* x, auto* y) { return x->a < y->a; });
  }
  return slices;
}

const EntropyRecord* find_record(const std::vector<EntropyRecord>& records, const Rational& a, const Rational& b) {
  for (const auto& r : records) {
    if (r.a == a && r.b == b) return &r;
  }
  return nullptr;
}

json point(const EntropyRecord& r) { return {{"a", to_string(r.a)}, {"b", to_string(r.b)}, {"entropy", r.entropy}}; }

}  // namespace

std::vector<PlateauSlice> plateau_slices(const std::vector<EntropyRecord>& records) {
  std::vector<PlateauSlice> out;
  for (const auto& [b, slice] : by_b(records)) {
    if (b > Rational(1, 2)) continue;
    const Rational edge = Rational(-1) / (b + 1);
    const EntropyRecord* lo = nullptr;
    const EntropyRecord* hi = nullptr;
    PlateauSlice p{b};
    for (const auto* r : slice) {
      if (r->a < -1 || r->a > edge) continue;
      ++p.points;
      if (!lo || r->entropy < lo->entropy) lo = r;
      if (!hi || r->entropy > hi->entropy) hi = r;
    }
    if (p.points < 2) continue;
    p.spread = hi->entropy - lo->entropy;
    p.combined_uncertainty = hi->uncertainty + lo->uncertainty;
    out.push_back(p);
  }
  return out;
}

json conjecture_report(const SweepResult& result) {
  const auto& records = result.records;
  json report;
  report["records"] = records.size();
  report["skipped"] = result.skipped.size();
  report["grid_points"] = result.grid_points;

  const auto bounds = bound_check(records);
  report["bounds"] = {{"log_kappa", log_kappa()},
                      {"log_golden", log_golden()},
                      {"violations", bounds.violations},
                      {"worst_excess", bounds.worst_excess}};

  // Non-decreasing in a along each slice b <= 1/2, up to the two uncertainties.
  std::size_t slices = 0, mono_violations = 0;
  double worst_drop = 0;
  json worst_mono = nullptr;
  for (const auto& [b, slice] : by_b(records)) {
    if (b > Rational(1, 2) || slice.size() < 2) continue;
    ++slices;
    for (std::size_t i = 1; i < slice.size(); ++i) {
      const double drop = slice[i - 1]->entropy - slice[i]->entropy;
      if (drop > slice[i - 1]->uncertainty + slice[i]->uncertainty) {
        ++mono_violations;
        if (drop > worst_drop) {
          worst_drop = drop;
          worst_mono = {{"from", point(*slice[i - 1])}, {"to", point(*slice[i])}};
        }
      }
    }
  }
  report["monotonicity"] = {
      {"slices", slices}, {"violations", mono_violations}, {"worst_drop", worst_drop}, {"worst", worst_mono}};

  json plateau = json::array();
  std::size_t not_flat = 0;
  for (const auto& p : plateau_slices(records)) {
    plateau.push_back({{"b", to_string(p.b)},
                       {"points", p.points},
                       {"spread", p.spread},
                       {"combined_uncertainty", p.combined_uncertainty},
                       {"flat", p.flat()}});
    if (!p.flat()) ++not_flat;
  }
  report["plateau"] = {{"slices", plateau}, {"not_flat", not_flat}};

  // f_{a,b} and f_{-b,-a} are conjugate.
  std::size_t pairs = 0, sym_violations = 0;
  double max_difference = 0;
  for (const auto& r : records) {
    if (r.a > -r.b) continue;
    const auto* mirror = find_record(records, -r.b, -r.a);
    if (!mirror) continue;
    ++pairs;
    const double diff = std::abs(r.entropy - mirror->entropy);
    max_difference = std::max(max_difference, diff);
    if (diff > r.uncertainty + mirror->uncertainty) ++sym_violations;
  }
  report["symmetry"] = {{"pairs", pairs}, {"violations", sym_violations}, {"max_difference", max_difference}};

  // The boundary family f_{b-1,b} against f_{-1,b}.
  std::size_t compared = 0, inside = 0, strictly_above = 0, strictly_below = 0;
  json meetings = json::array();
  for (const auto& r : records) {
    if (r.a != r.b - 1) continue;
    const auto* other = find_record(records, Rational(-1), r.b);
    if (!other) continue;
    ++compared;
    const double diff = r.entropy - other->entropy;
    const double u = r.uncertainty + other->uncertainty;
    if (r.b > 0 && r.b < Rational(1, 2)) {
      ++inside;
      if (diff > u) ++strictly_above;
      if (diff < -u) ++strictly_below;
    }
    if (r.b == 0 || r.b == Rational(1, 2)) {
      const double target = r.b == 0 ? log_kappa() : log_golden();
      meetings.push_back({{"b", to_string(r.b)},
                          {"boundary_family", r.entropy},
                          {"a_minus_one_family", other->entropy},
                          {"expected", target},
                          {"meet", std::abs(diff) <= u && std::abs(r.entropy - target) <= r.uncertainty + 1e-12}});
    }
  }
  report["families"] = {
      {"compared", compared},
      {"open_interval_points", inside},
      {"boundary_strictly_above", strictly_above},
      {"boundary_strictly_below", strictly_below},
      {"meetings", meetings}};
  return report;
}

bool VerifyReport::passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const CheckLine& l) { return l.passed; });
}

std::vector<std::string> suite_names() { return {"matrices", "psi", "recode", "slopes", "gauss", "all"}; }

namespace {

using markov::TransitionMatrix;
using parry::Regime;

const TransitionMatrix& reference_artin() {
  static const TransitionMatrix m({{1, 1, 0, 0, 0, 0, 0, 0},
                                   {0, 0, 1, 1, 0, 0, 0, 0},
                                   {0, 0, 0, 0, 0, 0, 1, 0},
                                   {0, 0, 0, 0, 0, 0, 0, 1},
                                   {1, 0, 0, 0, 0, 0, 0, 0},
                                   {0, 1, 0, 0, 0, 0, 0, 0},
                                   {0, 0, 0, 0, 1, 1, 0, 0},
                                   {0, 0, 0, 0, 0, 0, 1, 1}});
  return m;
}

const TransitionMatrix& reference_hurwitz() {
  static const TransitionMatrix m({{1, 1, 0, 0, 0, 0, 0, 0},
                                   {0, 0, 1, 1, 0, 0, 0, 0},
                                   {0, 0, 0, 0, 1, 0, 0, 0},
                                   {0, 0, 0, 0, 0, 0, 0, 1},
                                   {1, 0, 0, 0, 0, 0, 0, 0},
                                   {0, 0, 0, 1, 0, 0, 0, 0},
                                   {0, 0, 0, 0, 1, 1, 0, 0},
                                   {0, 0, 0, 0, 0, 0, 1, 1}});
  return m;
}

markov::IntPolynomial poly(std::initializer_list<int> coefficients) {
  markov::IntPolynomial p;
  for (int c : coefficients) p.coefficients.emplace_back(c);
  return p;
}

/// (λ+1, λ, 1, λ, λ, 1, λ, λ+1) / (6λ + 4).
std::vector<QSqrt5> reference_eigenvector() {
  const QSqrt5 l = QSqrt5::golden();
  const QSqrt5 d = QSqrt5(6) * l + QSqrt5(4);
  std::vector<QSqrt5> v{l + QSqrt5(1), l, QSqrt5(1), l, l, QSqrt5(1), l, l + QSqrt5(1)};
  for (auto& x : v) x /= d;
  return v;
}

CheckLine line(std::string name, bool passed, std::string detail = {}) {
  return {std::move(name), passed, std::move(detail)};
}

void suite_matrices(VerifyReport& report) {
  const auto ma = markov::transition_matrix(parry::paper_partition_8(Regime::artin));
  const auto mh = markov::transition_matrix(parry::paper_partition_8(Regime::hurwitz));
  report.lines.push_back(line("Artin 8-cell matrix equals M_A", ma == reference_artin()));
  report.lines.push_back(line("Hurwitz 8-cell matrix equals M_H", mh == reference_hurwitz()));

  const auto golden = poly({-1, -1, 1});
  const auto sixth = poly({1, -1, 1});
  const auto pa = markov::char_poly(ma);
  const auto ph = markov::char_poly(mh);
  report.lines.push_back(line("char poly of M_A is (x^2-x-1)(x^2-x+1)x^4", pa == golden * sixth * poly({0, 0, 0, 0, 1}),
                              markov::to_string(pa)));
  report.lines.push_back(line("char poly of M_H is (x^2-x-1)(x^2-x+1)(x^4-1)",
                              ph == golden * sixth * poly({-1, 0, 0, 0, 1}), markov::to_string(ph)));

  const auto m10 = markov::markov_entropy(cfmap::validate_params(Rational(-1), Rational(0)));
  const TransitionMatrix reference10({{1, 1, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 1}});
  report.lines.push_back(line("(-1,0) partition has 4 cells and matrix M_{-1,0}", m10.matrix == reference10,
                              markov::to_string(m10.matrix)));
  const auto& s = m10.spectrum;
  const bool brackets_kappa = markov::changes_sign(poly({-1, 0, -1, 1}), s.rho_lo, s.rho_hi);
  report.lines.push_back(line("(-1,0) bracket contains log kappa, width <= 1e-9",
                              brackets_kappa && s.entropy_hi - s.entropy_lo <= 1e-9,
                              "[" + format_significant(s.entropy_lo, 15) + ", " + format_significant(s.entropy_hi, 15) +
                                  "]"));

  const auto reference = reference_eigenvector();
  for (auto regime : {Regime::artin, Regime::hurwitz}) {
    const auto& model = parry::ParryModel::get(regime);
    const auto numeric = markov::right_eigenvector(model.matrix());
    double err = 0;
    for (std::size_t i = 0; i < numeric.size(); ++i) err = std::max(err, std::abs(numeric[i] - reference[i].to_double()));
    report.lines.push_back(line(std::string("eigenvector of ") + parry::to_string(regime) + " matches (6λ+4)^-1(λ+1,λ,1,λ,λ,1,λ,λ+1)",
                                model.eigenvector() == reference && err <= 1e-10,
                                "float max error " + format_significant(err, 3)));
  }
}

void suite_psi(VerifyReport& report, std::uint64_t seed) {
  const auto endpoints = parry::shared_endpoints();
  const auto v = reference_eigenvector();
  bool all_contain = true;
  QSqrt5 partial;
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    const QSqrt5 closed = QSqrt5(-1) + QSqrt5(2) * partial;
    for (auto regime : {Regime::artin, Regime::hurwitz}) {
      if (!parry::psi(regime, endpoints[i], 30).contains(closed)) all_contain = false;
    }
    if (i < v.size()) partial += v[i];
  }
  report.lines.push_back(line("psi brackets at the 9 endpoints contain the partial sums of v", all_contain));

  auto points = endpoints;
  const auto random = parry::random_points(200, seed);
  points.insert(points.end(), random.begin(), random.end());
  const auto r = parry::psi_equality_check(points, 30);
  report.lines.push_back(line("psi_A and psi_H brackets overlap (9 endpoints + 200 points, seed " +
                                  std::to_string(seed) + ")",
                              r.all_overlap, "max width " + format_significant(r.max_width, 3)));
}

void suite_recode(VerifyReport& report) {
  using projective::MoebiusMap;
  const auto t = MoebiusMap::T();
  const auto s = MoebiusMap::S();
  const auto ts = projective::compose(t, s);
  const auto ts3 = projective::compose(ts, projective::compose(ts, ts));
  report.lines.push_back(line("(TS)^3 = Id in PSL(2,Z)", projective::psl_equal(ts3, MoebiusMap::identity())));
  const auto sts = projective::compose(s, projective::compose(t, s));
  const auto ti = MoebiusMap::T_inverse();
  const auto tsti = projective::compose(ti, projective::compose(s, ti));
  report.lines.push_back(line("STS = T^-1 S T^-1 in PSL(2,Z)", projective::psl_equal(sts, tsti)));

  const auto rank2 = recode::verify_rank2_table();
  report.lines.push_back(line("rank-two matchings (12 pairs)", rank2.passed() && rank2.checked == 12,
                              rank2.first_failure.value_or("")));
  const auto blocks = recode::verify_block_identities();
  report.lines.push_back(line("exceptional-block identities", blocks.passed(), blocks.first_failure.value_or("")));
  const auto exhaustive = recode::exhaustive_check(12);
  report.lines.push_back(line("recoding of all Artin words of length <= 12", exhaustive.passed(),
                              std::to_string(exhaustive.checked) + " words" +
                                  (exhaustive.first_failure ? "; " + *exhaustive.first_failure : "")));
}

void suite_slopes(VerifyReport& report, std::uint64_t seed) {
  parry::SlopeCheckOptions options;
  options.seed = seed;
  auto describe = [](const parry::SlopeReport& r) {
    std::string out = std::to_string(r.pairs) + " pairs, max quotient width " + format_significant(r.max_quotient_width, 3);
    out += "; offsets";
    for (const auto& c : r.offsets) out += " " + format_significant(c.estimate(), 8);
    return out;
  };
  for (auto regime : {Regime::artin, Regime::hurwitz}) {
    const auto r = parry::constant_slope_check(regime, options);
    report.lines.push_back(line(std::string("constant slope for ") + parry::to_string(regime), r.passed(), describe(r)));
  }
  const std::vector<std::pair<Rational, Rational>> square{
      {Rational(-3, 4), Rational(3, 5)}, {Rational(-2, 3), Rational(5, 6)}, {Rational(-7, 8), Rational(4, 7)}};
  for (const auto& [a, b] : square) {
    const auto params = cfmap::validate_params(a, b);
    const auto r = parry::golden_square_slope_check(params, options);
    report.lines.push_back(line("constant slope on the golden square at " + cfmap::to_string(params), r.passed(),
                                describe(r)));
  }
}

void suite_gauss(VerifyReport& report, std::uint64_t seed) {
  const auto factor = cfmap::check_factor_relation(1000, seed);
  report.lines.push_back(line("g(|x|) = |f_{-1,1}(x)| on 1000 samples (seed " + std::to_string(seed) + ")",
                              factor.passed, factor.counterexample.value_or("")));
  const auto g = cfmap::make_slow_gauss();
  const auto m = markov::transition_matrix(g, {projective::CutPoint(0, 1), projective::CutPoint(1, 1),
                                               projective::CutPoint::pos_infinity()});
  report.lines.push_back(line("slow Gauss matrix is ((0,1),(1,1))", m == TransitionMatrix({{0, 1}, {1, 1}})));
  const auto s = markov::spectral_radius(m);
  report.lines.push_back(line("slow Gauss entropy is log golden within 1e-10",
                              std::abs(s.entropy() - log_golden()) <= 1e-10, format_significant(s.entropy(), 15)));
}

}  // namespace

VerifyReport run_verify(const std::string& suite, std::uint64_t seed) {
  VerifyReport report{suite, {}};
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "matrices") suite_matrices(report), known = true;
  if (all || suite == "psi") suite_psi(report, seed), known = true;
  if (all || suite == "recode") suite_recode(report), known = true;
  if (all || suite == "slopes") suite_slopes(report, seed), known = true;
  if (all || suite == "gauss") suite_gauss(report, seed), known = true;
  if (!known) throw UnknownSuite("unknown suite '" + suite + "' (expected matrices, psi, recode, slopes, gauss or all)");
  return report;
}

}  // namespace cfentropy::explorer
