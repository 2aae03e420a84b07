#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twed/bench.hpp"
#include "twed/dataset.hpp"
#include "twed/kernel.hpp"
#include "twed/matrix.hpp"
#include "twed/properties.hpp"
#include "twed/pwca.hpp"
#include "twed/report_json.hpp"

namespace {

  constexpr int exit_ok = 0;
  constexpr int exit_failure = 1;
  constexpr int exit_usage = 2;

  struct ParamFlags {
    double lambda{1.0};
    double gamma{0.001};
    std::string p{"2"};

    void attach(CLI::App* cmd) {
      cmd->add_option("--lambda", lambda, "Gap penalty (>= 0)")->capture_default_str();
      cmd->add_option("--gamma", gamma, "Time stiffness (> 0)")->capture_default_str();
      cmd->add_option("--p", p, "Value norm: 1, 2 or inf")->capture_default_str();
    }

    [[nodiscard]] twed::TwedParams params() const { return {lambda, gamma, twed::parse_norm(p)}; }
  };

  void add_format(CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "Input format: auto (by extension), csv or tsv")
      ->check(CLI::IsMember({"auto", "csv", "tsv"}))
      ->capture_default_str();
  }

  void warn(const twed::Dataset& ds) {
    for (const auto& w : ds.warnings) { std::cerr << "warning: " << ds.name << ": " << w << '\n'; }
  }

  twed::TimeSeries load_single(const std::string& path, const std::string& format) {
    const auto ds = twed::load_dataset(path, format);
    warn(ds);
    if (ds.size() != 1) {
      throw twed::Error(twed::ErrorCode::InvalidArgument,
                        "'" + path + "' holds " + std::to_string(ds.size()) + " series, expected exactly one");
    }
    return ds.items.front().series;
  }

  /// Writes to `path`, or standard output when the path is empty or "-".
  void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) { throw twed::Error(twed::ErrorCode::Io, "cannot write '" + path + "'"); }
    out << text;
    if (!out) { throw twed::Error(twed::ErrorCode::Io, "write to '" + path + "' failed"); }
  }

  std::vector<twed::PropertyReport> run_suite(const std::string& suite, std::optional<std::size_t> trials,
                                              std::uint64_t seed) {
    std::vector<twed::PropertyReport> out;
    auto add = [&](twed::PropertyReport r) { out.push_back(std::move(r)); };
    const bool all = suite == "all";
    if (all || suite == "metric") {
      twed::MetricConfig cfg;
      cfg.seed = seed;
      if (trials) { cfg.trials = *trials; }
      for (auto& r : twed::check_metric_axioms(cfg)) { add(std::move(r)); }
    }
    if (all || suite == "oracle") {
      twed::OracleConfig cfg;
      cfg.seed = seed;
      if (trials) { cfg.trials = *trials; }
      add(twed::check_oracle_equivalence(cfg));
    }
    if (all || suite == "lp-bound") {
      twed::LpBoundConfig cfg;
      cfg.seed = seed;
      if (trials) { cfg.trials = *trials; }
      add(twed::check_lp_bound(cfg));
    }
    if (all || suite == "monotonicity") {
      twed::MonotonicityConfig cfg;
      cfg.seed = seed;
      if (trials) { cfg.trials = *trials; }
      add(twed::check_monotonicity(cfg));
    }
    if (all || suite == "pwca") {
      twed::PwcaBoundConfig cfg;
      cfg.seed = seed;
      if (trials) { cfg.trials = *trials; }
      add(twed::check_pwca_bound(cfg));
    }
    return out;
  }

  std::string bench_table(const std::vector<twed::BenchRow>& rows) {
    std::string out = "length\trepetitions\tmin_ms\tmedian_ms\tratio\tallowed\n";
    for (const auto& r : rows) {
      out += std::to_string(r.length) + '\t' + std::to_string(r.repetitions) + '\t' + twed::format_number(r.min_ms, 6)
             + '\t' + twed::format_number(r.median_ms, 6) + '\t'
             + (r.allowed_ratio > 0 ? twed::format_number(r.ratio, 4) : "-") + '\t'
             + (r.allowed_ratio > 0 ? twed::format_number(r.allowed_ratio, 4) : "-") + '\n';
    }
    return out;
  }

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time warp edit distance on timestamped series"};
  app.require_subcommand(1);

  ParamFlags pf;
  std::string format = "auto";

  // dist
  auto* dist = app.add_subcommand("dist", "Distance between two single-series files");
  std::string file_a, file_b, path_out;
  dist->add_option("A", file_a)->required()->check(CLI::ExistingFile);
  dist->add_option("B", file_b)->required()->check(CLI::ExistingFile);
  dist->add_option("--path", path_out, "Write the optimal edit path as JSON ('-' for stdout)");
  pf.attach(dist);
  add_format(dist, format);

  // matrix
  auto* matrix = app.add_subcommand("matrix", "Pairwise distance matrix as CSV");
  std::string dataset, matrix_out;
  std::size_t jobs = 1;
  matrix->add_option("DATASET", dataset)->required()->check(CLI::ExistingFile);
  matrix->add_option("-o,--output", matrix_out, "Output file (default stdout)");
  matrix->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  pf.attach(matrix);
  add_format(matrix, format);

  // knn
  auto* knn = app.add_subcommand("knn", "k-nearest-neighbour classification");
  std::string train_path, test_path;
  std::size_t k = 1;
  knn->add_option("--train", train_path)->required()->check(CLI::ExistingFile);
  knn->add_option("--test", test_path)->required()->check(CLI::ExistingFile);
  knn->add_option("--k", k)->check(CLI::PositiveNumber)->capture_default_str();
  knn->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  pf.attach(knn);
  add_format(knn, format);

  // verify
  auto* verify = app.add_subcommand("verify", "Randomised property checks, JSON report");
  std::string suite = "all", verify_out;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 42;
  verify->add_option("--suite", suite)
    ->check(CLI::IsMember({"metric", "lp-bound", "monotonicity", "pwca", "oracle", "all"}))
    ->capture_default_str();
  verify->add_option("--trials", trials, "Trials per suite (default: each suite's own)")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("-o,--output", verify_out, "Report file (default stdout)");

  // pwca
  auto* pwca = app.add_subcommand("pwca", "Piecewise constant approximation and its distance bound");
  std::string pwca_file, pwca_out;
  std::optional<std::size_t> segments;
  pwca->add_option("SERIES", pwca_file)->required()->check(CLI::ExistingFile);
  pwca->add_option("-r,--segments", segments, "Segment count (default: every r)")->check(CLI::PositiveNumber);
  pwca->add_option("-o,--output", pwca_out, "Write the approximation as CSV (requires --segments)");
  pf.attach(pwca);
  add_format(pwca, format);

  // bench
  auto* bench = app.add_subcommand("bench", "Time one distance per length");
  std::vector<std::size_t> lengths{100, 200, 400};
  std::size_t repetitions = 5;
  bool no_assert = false;
  bench->add_option("--lengths", lengths)->delimiter(',')->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--repetitions", repetitions)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--seed", seed)->capture_default_str();
  bench->add_flag("--no-assert", no_assert, "Report scaling without failing on it");
  pf.attach(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*dist) {
      const auto params = pf.params();
      const auto a = load_single(file_a, format);
      const auto b = load_single(file_b, format);
      if (path_out.empty()) {
        std::printf("%.15g\n", twed::twed(a, b, params));
      } else {
        const auto al = twed::twed_with_path(a, b, params);
        if (path_out != "-") { std::printf("%.15g\n", al.distance); }
        emit(path_out, twed::alignment_to_json(al).dump(2) + "\n");
      }
      return exit_ok;
    }

    if (*matrix) {
      const auto params = pf.params();
      const auto ds = twed::load_dataset(dataset, format);
      warn(ds);
      const auto series = ds.series();
      emit(matrix_out, twed::format_matrix_csv(twed::distance_matrix(series, params, jobs)));
      return exit_ok;
    }

    if (*knn) {
      const auto params = pf.params();
      const auto train = twed::load_dataset(train_path, format);
      const auto test = twed::load_dataset(test_path, format);
      warn(train);
      warn(test);
      const auto res = twed::knn_classify(train, test, k, params, jobs);
      std::cout << "index\tactual\tpredicted\tnearest\tdistance\n";
      for (const auto& p : res.predictions) {
        std::cout << p.index << '\t' << p.actual << '\t' << p.predicted << '\t' << p.nearest << '\t'
                  << twed::format_number(p.nearest_distance, 15) << '\n';
      }
      std::cout << "accuracy\t" << twed::format_number(res.accuracy(), 15) << '\n';
      return exit_ok;
    }

    if (*verify) {
      const auto reports = run_suite(suite, trials, seed);
      bool passed = true;
      for (const auto& r : reports) { passed = passed && r.passed(); }
      const twed::json doc{{"suite", suite}, {"seed", seed}, {"passed", passed}, {"reports", reports}};
      emit(verify_out, doc.dump(2) + "\n");
      for (const auto& r : reports) {
        std::cerr << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.violations << " violations in "
                  << r.checks << " checks)\n";
      }
      return passed ? exit_ok : exit_failure;
    }

    if (*pwca) {
      const auto params = pf.params();
      const auto a = load_single(pwca_file, format);
      std::vector<twed::PwcaResult> results;
      if (segments) {
        results.push_back(twed::pwca_approximate(a, *segments));
      } else {
        if (!pwca_out.empty()) { throw twed::Error(twed::ErrorCode::InvalidArgument, "--output needs --segments"); }
        results = twed::pwca_sweep(a);
      }
      bool passed = true;
      std::cout << "r\tsse\tdelta_t\tdistance\tbound\tok\n";
      for (const auto& res : results) {
        const auto check = twed::check_pwca_result(res, params);
        passed = passed && check.passed;
        std::cout << res.segments.size() << '\t' << twed::format_number(res.sse, 15) << '\t'
                  << twed::format_number(res.delta_t, 15) << '\t' << twed::format_number(check.distance, 15) << '\t'
                  << twed::format_number(check.bound, 15) << '\t' << (check.passed ? "yes" : "no") << '\n';
      }
      if (!pwca_out.empty()) {
        twed::Dataset out;
        out.items.push_back({"approx", std::nullopt, results.front().approx});
        emit(pwca_out, twed::write_timestamped_csv(out));
      }
      return passed ? exit_ok : exit_failure;
    }

    if (*bench) {
      const auto rows = twed::run_bench(lengths, repetitions, pf.params(), seed);
      std::cout << bench_table(rows);
      const bool quadratic = twed::scaling_is_quadratic(rows);
      std::cout << "scaling\t" << (quadratic ? "consistent with O(p*q)" : "inconsistent with O(p*q)") << '\n';
      return quadratic || no_assert ? exit_ok : exit_failure;
    }
  } catch (const twed::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == twed::ErrorCode::InvalidParams ? exit_usage : exit_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_failure;
  }
  return exit_usage;
}
