#pragma once

// Deliberately broken kernels for checking that the property suites have teeth.

#include <vector>

#include "twed/kernel.hpp"
#include "twed/properties.hpp"
#include "twed/pwca.hpp"

namespace twed::testkit {

  /// Match cost without the previous-pair term.
  struct DropPreviousPair {
    [[nodiscard]] static constexpr double combine(double current, double /*previous*/) noexcept { return current; }
  };

  using DropPreviousPairDistance = BasicTwedDistance<DropPreviousPair>;

  /// Suites 1 to 5 at their default sizes under one seed.
  template<class Distance>
  std::vector<PropertyReport> run_all_suites(std::uint64_t seed, Distance distance) {
    MetricConfig metric;
    metric.seed = seed;
    std::vector<PropertyReport> out = check_metric_axioms(metric, distance);
    OracleConfig oracle;
    oracle.seed = seed;
    out.push_back(check_oracle_equivalence(oracle, distance));
    LpBoundConfig lp;
    lp.seed = seed;
    out.push_back(check_lp_bound(lp, distance));
    MonotonicityConfig mono;
    mono.seed = seed;
    out.push_back(check_monotonicity(mono, distance));
    PwcaBoundConfig pwca;
    pwca.seed = seed;
    out.push_back(check_pwca_bound(pwca, distance));
    return out;
  }

} // namespace twed::testkit
