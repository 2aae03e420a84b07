#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "series.hpp"

namespace twed {

  /// A concrete failing (or worst-case) instance. `trial` together with the report seed regenerates it.
  struct Witness {
    std::size_t trial{0};
    std::vector<TimeSeries> inputs;
    std::vector<TwedParams> params;
    double lhs{0.0};
    double rhs{0.0};
    double gap{0.0};
    std::string detail;
  };

  /// Outcome of one property over many random trials.
  struct PropertyReport {
    std::string name;
    std::size_t trials{0};
    std::size_t checks{0};
    std::size_t violations{0};
    double tolerance{0.0};
    std::uint64_t seed{0};
    /// Worst violation if any, by largest gap then lowest trial index.
    std::optional<Witness> worst;

    [[nodiscard]] bool passed() const noexcept { return violations == 0; }
  };

  /// Accumulates checks into a report. Merging is order-independent, so trials may be split across workers.
  class ReportBuilder {
  public:
    ReportBuilder(std::string name, double tolerance, std::uint64_t seed) {
      report_.name = std::move(name);
      report_.tolerance = tolerance;
      report_.seed = seed;
    }

    void count_trial() noexcept { ++report_.trials; }
    void count_check() noexcept { ++report_.checks; }

    void violation(Witness w) {
      ++report_.violations;
      consider(std::move(w));
    }

    void merge(const PropertyReport& other) {
      report_.trials += other.trials;
      report_.checks += other.checks;
      report_.violations += other.violations;
      if (other.worst) { consider(*other.worst); }
    }

    [[nodiscard]] PropertyReport finish() && { return std::move(report_); }
    [[nodiscard]] const PropertyReport& peek() const noexcept { return report_; }

  private:
    void consider(Witness w) {
      if (!report_.worst || w.gap > report_.worst->gap
          || (w.gap == report_.worst->gap && w.trial < report_.worst->trial)) {
        report_.worst = std::move(w);
      }
    }

    PropertyReport report_;
  };

} // namespace twed
