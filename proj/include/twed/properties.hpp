#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "kernel.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "report.hpp"
#include "series.hpp"

namespace twed {

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Configuration
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  inline constexpr double identity_tolerance = 1e-12;
  inline constexpr double triangle_tolerance = 1e-9;
  inline constexpr double oracle_relative_tolerance = 1e-12;
  inline constexpr double lp_bound_tolerance = 1e-12;
  inline constexpr double monotonicity_tolerance = 1e-12;

  /// Raw (lambda, gamma, norm) triple, validated into TwedParams when a check starts.
  struct ParamSetting {
    double lambda{1.0};
    double gamma{1.0};
    Norm norm{Norm::L2};

    [[nodiscard]] TwedParams to_params() const {
      if (!(lambda >= 0) || !std::isfinite(lambda) || !(gamma > 0) || !std::isfinite(gamma)) {
        throw Error(ErrorCode::InvalidConfig, "parameter setting needs lambda >= 0 and gamma > 0, got lambda="
                                                + std::to_string(lambda) + " gamma=" + std::to_string(gamma));
      }
      return {lambda, gamma, norm};
    }
  };

  struct ParamGrid {
    std::vector<double> lambdas{0.0, 0.5, 1.0};
    std::vector<double> gammas{0.1, 1.0, 10.0};
    std::vector<Norm> norms{Norm::L1, Norm::L2, Norm::Linf};

    void validate() const {
      if (lambdas.empty() || gammas.empty() || norms.empty()) {
        throw Error(ErrorCode::InvalidConfig, "parameter grid has an empty axis");
      }
      for (double l : lambdas) {
        for (double g : gammas) { (void)ParamSetting{l, g, Norm::L2}.to_params(); }
      }
    }

    [[nodiscard]] TwedParams draw(Rng& rng) const {
      const double l = pick(rng, lambdas);
      const double g = pick(rng, gammas);
      return {l, g, pick(rng, norms)};
    }
  };

  struct SeriesShape {
    std::size_t min_length{1};
    std::size_t max_length{8};
    std::vector<std::size_t> dims{1, 2};
    double time_span{10.0};

    void validate() const {
      if (min_length > max_length) { throw Error(ErrorCode::InvalidConfig, "min_length > max_length"); }
      if (dims.empty()) { throw Error(ErrorCode::InvalidConfig, "no dimensions to draw from"); }
      for (auto k : dims) {
        if (k == 0) { throw Error(ErrorCode::InvalidConfig, "dimension 0 requested"); }
      }
      if (!(time_span > 0) || !std::isfinite(time_span)) {
        throw Error(ErrorCode::InvalidConfig, "time span must be positive");
      }
    }

    [[nodiscard]] TimeSeries draw(Rng& rng, std::size_t dim) const {
      return random_series(rng, uniform_size(rng, min_length, max_length), dim, time_span);
    }
  };

  inline void require_trials(std::size_t trials) {
    if (trials == 0) { throw Error(ErrorCode::InvalidConfig, "trials must be >= 1"); }
  }

  /// Stream identifiers keep the suites' random draws independent under one user seed.
  enum class Suite : std::uint64_t { Metric = 1, Oracle = 2, LpBound = 3, Monotonicity = 4, Pwca = 5 };

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Metric axioms
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  struct MetricConfig {
    SeriesShape shape{};
    ParamGrid grid{};
    std::size_t trials{500};
    std::uint64_t seed{42};
    /// Chance that B copies A, and independently that C copies B, so the identity check sees equal pairs.
    double copy_probability{0.2};
  };

  /// Non-negativity, identity of indiscernibles, symmetry (exact) and the triangle inequality (all three
  /// arrangements of each random triple). Returns the four reports in that order.
  template<class Distance = TwedDistance>
  std::vector<PropertyReport> check_metric_axioms(const MetricConfig& cfg, Distance distance = {}) {
    require_trials(cfg.trials);
    cfg.shape.validate();
    cfg.grid.validate();
    if (!(cfg.copy_probability >= 0.0 && cfg.copy_probability <= 1.0)) {
      throw Error(ErrorCode::InvalidConfig, "copy probability outside [0, 1]");
    }

    ReportBuilder nonneg("non_negativity", 0.0, cfg.seed);
    ReportBuilder identity("identity_of_indiscernibles", identity_tolerance, cfg.seed);
    ReportBuilder symmetry("symmetry", 0.0, cfg.seed);
    ReportBuilder triangle("triangle_inequality", triangle_tolerance, cfg.seed);

    for (std::size_t t = 0; t < cfg.trials; ++t) {
      Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(Suite::Metric), t);
      const TwedParams params = cfg.grid.draw(rng);
      const std::size_t dim = pick(rng, cfg.shape.dims);
      std::bernoulli_distribution copy(cfg.copy_probability);

      const TimeSeries a = cfg.shape.draw(rng, dim);
      const TimeSeries b = copy(rng) ? a : cfg.shape.draw(rng, dim);
      const TimeSeries c = copy(rng) ? b : cfg.shape.draw(rng, dim);
      const TimeSeries* s[3] = {&a, &b, &c};

      double d[3][3];
      for (int x = 0; x < 3; ++x) {
        for (int y = 0; y < 3; ++y) { d[x][y] = distance(*s[x], *s[y], params); }
      }

      auto witness = [&](double lhs, double rhs, double gap, std::string detail) {
        return Witness{t, {a, b, c}, {params}, lhs, rhs, gap, std::move(detail)};
      };
      static constexpr const char* names = "ABC";

      for (int x = 0; x < 3; ++x) {
        for (int y = 0; y < 3; ++y) {
          nonneg.count_check();
          if (!(d[x][y] >= 0.0)) {
            nonneg.violation(witness(d[x][y], 0.0, -d[x][y], std::string("d(") + names[x] + "," + names[y] + ") < 0"));
          }
        }
      }

      for (int x = 0; x < 3; ++x) {
        for (int y = x; y < 3; ++y) {
          identity.count_check();
          const bool equal = *s[x] == *s[y];
          const bool zero = std::fabs(d[x][y]) <= identity_tolerance;
          if (equal != zero) {
            const std::string pair = std::string(1, names[x]) + "," + names[y];
            identity.violation(equal ? witness(d[x][y], identity_tolerance, std::fabs(d[x][y]), "equal series " + pair + " at nonzero distance")
                                     : witness(d[x][y], identity_tolerance, identity_tolerance - std::fabs(d[x][y]), "distinct series " + pair + " at zero distance"));
          }
          if (x != y) {
            symmetry.count_check();
            if (d[x][y] != d[y][x]) {
              symmetry.violation(witness(d[x][y], d[y][x], std::fabs(d[x][y] - d[y][x]),
                                         std::string("d(") + names[x] + "," + names[y] + ") != d(" + names[y] + "," + names[x] + ")"));
            }
          }
        }
      }

      // d(x, z) <= d(x, y) + d(y, z) with y as the middle series.
      const int arrangements[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}};
      for (const auto& arr : arrangements) {
        const int x = arr[0], y = arr[1], z = arr[2];
        triangle.count_check();
        const double lhs = d[x][z];
        const double rhs = d[x][y] + d[y][z];
        if (lhs > rhs + triangle_tolerance) {
          triangle.violation(witness(lhs, rhs, lhs - rhs,
                                     std::string("d(") + names[x] + "," + names[z] + ") > d(" + names[x] + "," + names[y]
                                       + ") + d(" + names[y] + "," + names[z] + ")"));
        }
      }

      nonneg.count_trial();
      identity.count_trial();
      symmetry.count_trial();
      triangle.count_trial();
    }

    std::vector<PropertyReport> out;
    out.push_back(std::move(nonneg).finish());
    out.push_back(std::move(identity).finish());
    out.push_back(std::move(symmetry).finish());
    out.push_back(std::move(triangle).finish());
    return out;
  }

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Dynamic programme vs exhaustive enumeration
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  struct OracleConfig {
    std::size_t max_total_length{10};
    std::vector<std::size_t> dims{1, 2};
    ParamGrid grid{};
    double time_span{10.0};
    std::size_t trials{1000};
    std::uint64_t seed{42};
  };

  template<class Distance = TwedDistance>
  PropertyReport check_oracle_equivalence(const OracleConfig& cfg, Distance distance = {}) {
    require_trials(cfg.trials);
    cfg.grid.validate();
    if (cfg.max_total_length > bruteforce_max_total_length) {
      throw Error(ErrorCode::InvalidConfig, "oracle instances limited to p + q <= "
                                              + std::to_string(bruteforce_max_total_length));
    }
    SeriesShape{0, cfg.max_total_length, cfg.dims, cfg.time_span}.validate();

    ReportBuilder report("oracle_equivalence", oracle_relative_tolerance, cfg.seed);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(Suite::Oracle), t);
      const TwedParams params = cfg.grid.draw(rng);
      const std::size_t dim = pick(rng, cfg.dims);
      const std::size_t p = uniform_size(rng, 0, cfg.max_total_length);
      const std::size_t q = uniform_size(rng, 0, cfg.max_total_length - p);
      const TimeSeries a = random_series(rng, p, dim, cfg.time_span);
      const TimeSeries b = random_series(rng, q, dim, cfg.time_span);

      const double dp = distance(a, b, params);
      const double brute = twed_bruteforce(a, b, params);
      report.count_trial();
      report.count_check();
      if (!relatively_equal(dp, brute, oracle_relative_tolerance)) {
        const double scale = std::max(std::fabs(dp), std::fabs(brute));
        report.violation(Witness{t, {a, b}, {params}, dp, brute, std::fabs(dp - brute) / scale, "kernel vs enumeration"});
      }
    }
    return std::move(report).finish();
  }

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Upper bound by twice the lock-step distance
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  using PairSource = std::function<std::pair<TimeSeries, TimeSeries>(Rng&, const SeriesShape&, std::size_t dim)>;

  /// Equal-length pair sharing one set of timestamps.
  inline std::pair<TimeSeries, TimeSeries> equal_length_pair(Rng& rng, const SeriesShape& shape, std::size_t dim) {
    const auto times = random_timestamps(rng, uniform_size(rng, shape.min_length, shape.max_length), shape.time_span);
    TimeSeries a = random_series_at(rng, times, dim);
    TimeSeries b = random_series_at(rng, times, dim);
    return {std::move(a), std::move(b)};
  }

  struct LpBoundConfig {
    SeriesShape shape{};
    ParamGrid grid{};
    std::size_t trials{200};
    std::uint64_t seed{42};
    /// Defaults to equal_length_pair. A source that yields unequal lengths is a configuration error.
    PairSource pairs{};
  };

  template<class Distance = TwedDistance>
  PropertyReport check_lp_bound(const LpBoundConfig& cfg, Distance distance = {}) {
    require_trials(cfg.trials);
    cfg.shape.validate();
    cfg.grid.validate();
    const PairSource source = cfg.pairs ? cfg.pairs : PairSource(equal_length_pair);

    ReportBuilder report("lp_upper_bound", lp_bound_tolerance, cfg.seed);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(Suite::LpBound), t);
      const TwedParams params = cfg.grid.draw(rng);
      const std::size_t dim = pick(rng, cfg.shape.dims);
      const auto [a, b] = source(rng, cfg.shape, dim);
      if (a.size() != b.size()) {
        throw Error(ErrorCode::InvalidConfig, "pair generator produced lengths " + std::to_string(a.size()) + " and "
                                                + std::to_string(b.size()) + "; the bound needs equal lengths");
      }
      const double lhs = distance(a, b, params);
      const double rhs = 2.0 * series_lp_distance(a, b, params.norm());
      report.count_trial();
      report.count_check();
      if (lhs > rhs + lp_bound_tolerance) {
        report.violation(Witness{t, {a, b}, {params}, lhs, rhs, lhs - rhs, "twed > 2 * lock-step distance"});
      }
    }
    return std::move(report).finish();
  }

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Monotonicity in lambda and gamma
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  /// (lambda, gamma) <= (lambda_hi, gamma_hi) componentwise.
  struct OrderedParams {
    double lambda;
    double gamma;
    double lambda_hi;
    double gamma_hi;
  };

  inline std::vector<OrderedParams> default_ordered_params() {
    return {
      {0.0, 0.1, 0.5, 0.1},
      {0.5, 0.1, 0.5, 1.0},
      {0.0, 1.0, 1.0, 1.0},
      {0.5, 1.0, 1.0, 10.0},
      {0.0, 0.001, 2.0, 0.5},
    };
  }

  struct MonotonicityConfig {
    SeriesShape shape{};
    std::vector<OrderedParams> pairs = default_ordered_params();
    std::vector<Norm> norms{Norm::L1, Norm::L2, Norm::Linf};
    std::size_t trials{200};
    std::uint64_t seed{42};
  };

  template<class Distance = TwedDistance>
  PropertyReport check_monotonicity(const MonotonicityConfig& cfg, Distance distance = {}) {
    require_trials(cfg.trials);
    cfg.shape.validate();
    if (cfg.pairs.empty() || cfg.norms.empty()) { throw Error(ErrorCode::InvalidConfig, "no parameter pairs or norms"); }
    for (const auto& op : cfg.pairs) {
      (void)ParamSetting{op.lambda, op.gamma}.to_params();
      (void)ParamSetting{op.lambda_hi, op.gamma_hi}.to_params();
      if (op.lambda_hi < op.lambda || op.gamma_hi < op.gamma) {
        throw Error(ErrorCode::InvalidConfig, "parameter pair is not ordered: (" + std::to_string(op.lambda) + ", "
                                                + std::to_string(op.gamma) + ") vs (" + std::to_string(op.lambda_hi)
                                                + ", " + std::to_string(op.gamma_hi) + ")");
      }
    }

    ReportBuilder report("monotonicity", monotonicity_tolerance, cfg.seed);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(Suite::Monotonicity), t);
      const Norm norm = pick(rng, cfg.norms);
      const std::size_t dim = pick(rng, cfg.shape.dims);
      const TimeSeries a = cfg.shape.draw(rng, dim);
      const TimeSeries b = cfg.shape.draw(rng, dim);
      report.count_trial();
      for (const auto& op : cfg.pairs) {
        const TwedParams lo(op.lambda, op.gamma, norm);
        const TwedParams hi(op.lambda_hi, op.gamma_hi, norm);
        const double lhs = distance(a, b, lo);
        const double rhs = distance(a, b, hi);
        report.count_check();
        if (lhs > rhs + monotonicity_tolerance) {
          report.violation(Witness{t, {a, b}, {lo, hi}, lhs, rhs, lhs - rhs, "distance decreased as parameters grew"});
        }
      }
    }
    return std::move(report).finish();
  }

} // namespace twed
