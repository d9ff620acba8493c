// cfentropy: topological entropy of the boundary maps f_{a,b}.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cfentropy/explorer.hpp"
#include "cfentropy/parry.hpp"
#include "cfentropy/recode.hpp"

namespace ex = cfentropy::explorer;
using cfentropy::Rational;

namespace {

constexpr int kVerificationFailure = 1;
constexpr int kInvalidInput = 2;

struct Common {
  std::string a = "-1";
  std::string b = "1";
  std::string method = "auto";
  std::size_t depth = cfentropy::lapcount::kDefaultDepth;
  std::size_t budget = 4096;
  double tol = 1e-12;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 7;
  std::size_t jobs = 0;
};

ex::EntropyOptions options_from(const Common& c) {
  ex::EntropyOptions o;
  o.method = ex::parse_method(c.method);
  o.budget = {c.budget, c.budget};
  o.tol = c.tol;
  o.depth = c.depth;
  return o;
}

std::pair<Rational, Rational> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw cfentropy::ParseError("range '" + text + "' must look like LO:HI");
  return {cfentropy::parse_rational(text.substr(0, colon)), cfentropy::parse_rational(text.substr(colon + 1))};
}

/// Writes to --out, or stdout when it is empty.
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw cfentropy::Error("cannot open " + path + " for writing");
  write(file);
  if (!file) throw cfentropy::Error("write to " + path + " failed");
}

void emit_sweep(const Common& c, const ex::SweepResult& result) {
  if (c.format != "csv" && c.format != "json") throw cfentropy::ParseError("--format must be csv or json");
  emit(c.out, [&](std::ostream& os) {
    if (c.format == "json") {
      os << ex::to_json(result).dump(2) << '\n';
    } else {
      ex::write_csv(os, result.records);
    }
  });
  std::cerr << result.records.size() << " records, " << result.skipped.size() << " skipped of "
            << result.grid_points << " grid points\n";
}

std::vector<int> parse_word(const std::string& text) {
  std::vector<int> symbols;
  for (char ch : text) {
    if (ch == ',' || ch == ' ') continue;
    if (ch < '1' || ch > '8') throw cfentropy::ParseError("word symbols must be digits 1..8");
    symbols.push_back(ch - '0');
  }
  if (symbols.empty()) throw cfentropy::ParseError("empty word");
  return symbols;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topological entropy of the (a,b)-continued fraction boundary maps"};
  app.require_subcommand(1);
  Common c;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("-a", c.a, "parameter a as p/q")->allow_extra_args(false);
    sub->add_option("-b", c.b, "parameter b as p/q")->allow_extra_args(false);
  };
  auto add_entropy_flags = [&](CLI::App* sub) {
    sub->add_option("--method", c.method, "auto, markov or lapcount");
    sub->add_option("--depth", c.depth, "lap-count depth");
    sub->add_option("--budget", c.budget, "orbit-closure point and iteration budget");
    sub->add_option("--tol", c.tol, "spectral bracket tolerance");
  };

  auto* entropy = app.add_subcommand("entropy", "entropy of f_{a,b}");
  add_params(entropy);
  add_entropy_flags(entropy);
  std::string entropy_format = "text";
  entropy->add_option("--format", entropy_format, "text, csv or json");

  auto* sweep = app.add_subcommand("sweep", "grid sweep written as CSV or JSON");
  std::string preset, a_range = "-5/4:0", b_range = "0:5/4", step = "1/20";
  sweep->add_option("--preset", preset, "surface, fixed-b or families");
  sweep->add_option("--a-range", a_range, "LO:HI");
  sweep->add_option("--b-range", b_range, "LO:HI");
  sweep->add_option("--step", step, "grid step p/q");
  std::size_t max_denominator = 64;
  sweep->add_option("--max-denominator", max_denominator, "skip grid points with larger denominators");
  sweep->add_option("--out", c.out, "output path (default stdout)");
  sweep->add_option("--format", c.format, "csv or json");
  sweep->add_option("--jobs", c.jobs, "worker threads (0: all cores)");
  add_entropy_flags(sweep);

  auto* conjectures = app.add_subcommand("conjectures", "JSON report on the entropy conjectures");
  std::string conj_preset = "surface";
  conjectures->add_option("--preset", conj_preset, "surface, fixed-b or families");
  conjectures->add_option("--out", c.out, "output path (default stdout)");
  conjectures->add_option("--jobs", c.jobs, "worker threads (0: all cores)");
  add_entropy_flags(conjectures);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  verify->add_option("suite", suite, "matrices, psi, recode, slopes, gauss or all");
  verify->add_option("--seed", c.seed, "seed for sampled checks");

  auto* psi = app.add_subcommand("psi", "brackets for psi_A(x) and psi_H(x)");
  std::string x = "0";
  psi->add_option("-x", x, "point p/q, or -inf / inf")->allow_extra_args(false);
  std::size_t psi_depth = 30;
  psi->add_option("--depth", psi_depth, "cylinder depth");

  auto* recode = app.add_subcommand("recode", "recode an Artin word as a Hurwitz word");
  std::string word;
  recode->add_option("word", word, "Artin-admissible word, e.g. 3751")->required();

  auto* laps = app.add_subcommand("laps", "lap counts L_1..L_depth");
  add_params(laps);
  laps->add_option("--depth", c.depth, "depth");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalidInput;
  }

  try {
    if (*entropy) {
      const auto params = cfentropy::cfmap::validate_params(cfentropy::parse_rational(c.a), cfentropy::parse_rational(c.b));
      const auto record = ex::compute_entropy(params, options_from(c));
      if (entropy_format == "json") {
        std::cout << ex::to_json(record).dump(2) << '\n';
      } else if (entropy_format == "csv") {
        ex::write_csv(std::cout, {record});
      } else if (entropy_format == "text") {
        std::cout << "a = " << cfentropy::to_string(record.a) << ", b = " << cfentropy::to_string(record.b) << '\n'
                  << "entropy = " << cfentropy::format_significant(record.entropy, 15) << " +/- "
                  << cfentropy::format_significant(record.uncertainty, 3) << '\n'
                  << "method = " << ex::to_string(record.method);
        if (record.matrix_size) std::cout << " (" << *record.matrix_size << " cells)";
        std::cout << '\n';
        if (record.cycle_witness) {
          const auto& w = *record.cycle_witness;
          std::cout << "cycle witness: m_a = " << w.m_a << ", k_a = " << w.k_a << ", m_b = " << w.m_b
                    << ", k_b = " << w.k_b << '\n';
        }
      } else {
        throw cfentropy::ParseError("--format must be text, csv or json");
      }
    } else if (*sweep) {
      const auto options = options_from(c);
      if (!preset.empty()) {
        emit_sweep(c, ex::run_preset(preset, options, c.jobs));
      } else {
        ex::SweepSpec spec;
        const auto [alo, ahi] = parse_range(a_range);
        const auto [blo, bhi] = parse_range(b_range);
        spec.a = {alo, ahi};
        spec.b = {blo, bhi};
        spec.step = cfentropy::parse_rational(step);
        if (spec.step <= 0) throw cfentropy::ParseError("--step must be positive");
        spec.options = options;
        spec.jobs = c.jobs;
        spec.max_denominator = max_denominator;
        emit_sweep(c, ex::run_sweep(spec));
      }
    } else if (*conjectures) {
      const auto result = ex::run_preset(conj_preset, options_from(c), c.jobs);
      auto report = ex::conjecture_report(result);
      report["preset"] = conj_preset;
      emit(c.out, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
    } else if (*verify) {
      std::cout << "seed = " << c.seed << '\n';
      const auto report = ex::run_verify(suite, c.seed);
      for (const auto& l : report.lines) {
        std::cout << (l.passed ? "PASS " : "FAIL ") << l.name;
        if (!l.detail.empty()) std::cout << "  [" << l.detail << ']';
        std::cout << '\n';
      }
      return report.passed() ? 0 : kVerificationFailure;
    } else if (*psi) {
      cfentropy::projective::CutPoint point;
      if (x == "-inf") {
        point = cfentropy::projective::CutPoint::neg_infinity();
      } else if (x == "inf" || x == "+inf") {
        point = cfentropy::projective::CutPoint::pos_infinity();
      } else {
        point = cfentropy::projective::CutPoint(cfentropy::parse_rational(x));
      }
      for (auto regime : {cfentropy::parry::Regime::artin, cfentropy::parry::Regime::hurwitz}) {
        const auto bracket = cfentropy::parry::psi(regime, point, psi_depth);
        std::cout << "psi_" << cfentropy::parry::to_string(regime) << "(" << x << ") in ["
                  << cfentropy::format_significant(bracket.lo, 15) << ", "
                  << cfentropy::format_significant(bracket.hi, 15) << "]\n";
      }
    } else if (*recode) {
      const cfentropy::parry::SymbolWord omega{cfentropy::parry::Regime::artin, parse_word(word)};
      const auto extended = cfentropy::recode::extend_forced_tail(omega);
      const auto tracked = cfentropy::recode::recode_by_tracking(extended);
      const auto blocked = cfentropy::recode::recode_by_blocks(extended);
      std::cout << "omega    = " << cfentropy::parry::to_string(extended) << '\n'
                << "tau      = " << cfentropy::parry::to_string(tracked.tau) << '\n'
                << "interval = [" << cfentropy::projective::to_string(tracked.interval.lo) << ", "
                << cfentropy::projective::to_string(tracked.interval.hi) << "]\n"
                << "map      = " << cfentropy::projective::to_string(tracked.interval.composed_map) << '\n';
      if (tracked.tau != blocked.tau) {
        std::cout << "block substitution disagrees: " << cfentropy::parry::to_string(blocked.tau) << '\n';
        return kVerificationFailure;
      }
    } else if (*laps) {
      const auto params = cfentropy::cfmap::validate_params(cfentropy::parse_rational(c.a), cfentropy::parse_rational(c.b));
      const auto series = cfentropy::lapcount::lap_counts(params, c.depth);
      for (std::size_t k = 0; k < series.counts.size(); ++k) std::cout << "L_" << k + 1 << " = " << series.counts[k] << '\n';
      if (series.counts.size() >= 4) {
        const auto estimate = cfentropy::lapcount::entropy_estimate(series);
        std::cout << "estimate = " << cfentropy::format_significant(estimate.value, 15) << " +/- "
                  << cfentropy::format_significant(estimate.uncertainty, 3) << '\n';
      }
    }
  } catch (const cfentropy::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const cfentropy::cfmap::OutOfParameterSpace& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const ex::UnknownSuite& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const ex::UnknownPreset& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const cfentropy::parry::InadmissibleWord& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const cfentropy::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return 0;
}
