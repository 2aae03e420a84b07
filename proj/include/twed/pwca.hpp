#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "kernel.hpp"
#include "properties.hpp"
#include "random.hpp"
#include "report.hpp"
#include "series.hpp"

namespace twed {

  /// Contiguous run of samples [first, last] (0-based, inclusive) replaced by one constant vector.
  struct Segment {
    std::size_t first;
    std::size_t last;
    std::vector<double> constant;

    [[nodiscard]] std::size_t length() const noexcept { return last - first + 1; }
    friend bool operator==(const Segment&, const Segment&) = default;
  };

  /// Piecewise constant approximation of a series with r segments.
  struct PwcaResult {
    TimeSeries original;
    /// p samples, original timestamps, each value replaced by its segment's constant.
    TimeSeries approx;
    std::vector<Segment> segments;
    /// One sample per segment: the segment constant at the segment's last timestamp.
    TimeSeries extremities;
    /// Mean gap between successive samples inside a segment; 0 when every segment is a singleton.
    double delta_t{0.0};
    double sse{0.0};
  };

  namespace detail {

    /// Optimal contiguous segmentations by dynamic programming over suffixes.
    ///
    /// cost(i, e) is the squared error of samples i..e around their mean, accumulated with Welford updates
    /// (stable, O(p^2) for the whole table). best(s, i) is the least total cost of splitting i..p-1 into s
    /// segments. Reconstruction walks forward and takes the smallest first-segment end achieving best(s, i),
    /// which gives the lexicographically smallest boundary set among the optima.
    class Segmenter {
    public:
      Segmenter(const TimeSeries& series, std::size_t max_segments)
        : p_(series.size()), max_segments_(max_segments), cost_(p_ * p_, 0.0),
          best_(max_segments * (p_ + 1), std::numeric_limits<double>::infinity()) {
        const std::size_t k = series.dim();
        std::vector<double> mean(k), m2(k);
        for (std::size_t i = 0; i < p_; ++i) {
          std::fill(mean.begin(), mean.end(), 0.0);
          std::fill(m2.begin(), m2.end(), 0.0);
          for (std::size_t e = i; e < p_; ++e) {
            const auto x = series.value(e);
            const double n = static_cast<double>(e - i + 1);
            double total = 0.0;
            for (std::size_t c = 0; c < k; ++c) {
              const double delta = x[c] - mean[c];
              mean[c] += delta / n;
              m2[c] += delta * (x[c] - mean[c]);
              total += m2[c];
            }
            cost(i, e) = total;
          }
        }

        for (std::size_t i = 0; i < p_; ++i) { best(1, i) = cost(i, p_ - 1); }
        for (std::size_t s = 2; s <= max_segments_; ++s) {
          for (std::size_t i = 0; i + s <= p_; ++i) {
            double b = std::numeric_limits<double>::infinity();
            for (std::size_t e = i; e + s <= p_; ++e) {
              const double candidate = cost(i, e) + best(s - 1, e + 1);
              if (candidate < b) { b = candidate; }
            }
            best(s, i) = b;
          }
        }
      }

      /// Inclusive end index of every segment, for r <= max_segments.
      [[nodiscard]] std::vector<std::size_t> segment_ends(std::size_t r) const {
        std::vector<std::size_t> ends;
        ends.reserve(r);
        std::size_t i = 0;
        for (std::size_t s = r; s > 1; --s) {
          const double target = best(s, i);
          std::size_t e = i;
          while (cost(i, e) + best(s - 1, e + 1) != target) { ++e; }
          ends.push_back(e);
          i = e + 1;
        }
        ends.push_back(p_ - 1);
        return ends;
      }

    private:
      double& cost(std::size_t i, std::size_t e) { return cost_[i * p_ + e]; }
      [[nodiscard]] double cost(std::size_t i, std::size_t e) const { return cost_[i * p_ + e]; }
      double& best(std::size_t s, std::size_t i) { return best_[(s - 1) * (p_ + 1) + i]; }
      [[nodiscard]] double best(std::size_t s, std::size_t i) const { return best_[(s - 1) * (p_ + 1) + i]; }

      std::size_t p_;
      std::size_t max_segments_;
      std::vector<double> cost_;
      std::vector<double> best_;
    };

    inline void check_segment_count(std::size_t p, std::size_t r) {
      if (p == 0) { throw Error(ErrorCode::EmptySeries, "cannot approximate the empty series"); }
      if (r == 0) { throw Error(ErrorCode::InvalidArgument, "segment count must be >= 1"); }
      if (r > p) {
        throw Error(ErrorCode::TooManySegments,
                    std::to_string(r) + " segments requested for " + std::to_string(p) + " samples");
      }
    }

  } // namespace detail

  /// Build the approximation for a given segmentation (inclusive end index of each segment, increasing,
  /// last one p-1). Constants are segment means; sse is evaluated directly from those means.
  inline PwcaResult pwca_from_segment_ends(const TimeSeries& a, const std::vector<std::size_t>& ends) {
    const std::size_t p = a.size();
    const std::size_t k = a.dim();
    detail::check_segment_count(p, ends.size());
    if (ends.back() != p - 1) { throw Error(ErrorCode::InvalidArgument, "last segment must end at the last sample"); }

    PwcaResult out;
    out.original = a;
    std::vector<double> approx_values;
    approx_values.reserve(p * k);
    std::vector<double> ext_values, ext_times;
    double gap_sum = 0.0;
    std::size_t gap_count = 0;

    std::size_t first = 0;
    for (std::size_t e : ends) {
      if (e < first || e >= p) { throw Error(ErrorCode::InvalidArgument, "segment ends must increase strictly"); }
      std::vector<double> mean(k, 0.0);
      for (std::size_t i = first; i <= e; ++i) {
        for (std::size_t c = 0; c < k; ++c) { mean[c] += a.value(i)[c]; }
      }
      const double n = static_cast<double>(e - first + 1);
      for (auto& m : mean) { m /= n; }
      for (std::size_t i = first; i <= e; ++i) {
        for (std::size_t c = 0; c < k; ++c) {
          const double dev = a.value(i)[c] - mean[c];
          out.sse += dev * dev;
        }
        approx_values.insert(approx_values.end(), mean.begin(), mean.end());
        if (i > first) {
          gap_sum += a.timestamp(i) - a.timestamp(i - 1);
          ++gap_count;
        }
      }
      ext_values.insert(ext_values.end(), mean.begin(), mean.end());
      ext_times.push_back(a.timestamp(e));
      out.segments.push_back(Segment{first, e, std::move(mean)});
      first = e + 1;
    }

    out.approx = TimeSeries::from_buffers(approx_values, a.timestamps(), k);
    out.extremities = TimeSeries::from_buffers(ext_values, ext_times, k);
    out.delta_t = gap_count == 0 ? 0.0 : gap_sum / static_cast<double>(gap_count);
    return out;
  }

  /// Least-squares piecewise constant approximation with exactly `num_segments` segments.
  inline PwcaResult pwca_approximate(const TimeSeries& a, std::size_t num_segments) {
    detail::check_segment_count(a.size(), num_segments);
    const detail::Segmenter seg(a, num_segments);
    return pwca_from_segment_ends(a, seg.segment_ends(num_segments));
  }

  /// Approximations for every r in 1..p from one shared table.
  inline std::vector<PwcaResult> pwca_sweep(const TimeSeries& a) {
    detail::check_segment_count(a.size(), 1);
    const detail::Segmenter seg(a, a.size());
    std::vector<PwcaResult> out;
    out.reserve(a.size());
    for (std::size_t r = 1; r <= a.size(); ++r) { out.push_back(pwca_from_segment_ends(a, seg.segment_ends(r))); }
    return out;
  }

  [[nodiscard]] inline TimeSeries segment_extremities(const PwcaResult& result) { return result.extremities; }
  [[nodiscard]] inline double mean_intrasegment_dt(const PwcaResult& result) { return result.delta_t; }

  /// lambda * (p - r) + gamma * dt * (2p - r)
  [[nodiscard]] inline double pwca_bound(std::size_t p, std::size_t r, double delta_t, const TwedParams& params) {
    if (r == 0) { throw Error(ErrorCode::InvalidArgument, "segment count must be >= 1"); }
    if (r > p) {
      throw Error(ErrorCode::TooManySegments, std::to_string(r) + " segments for " + std::to_string(p) + " samples");
    }
    if (!(delta_t >= 0) || !std::isfinite(delta_t)) {
      throw Error(ErrorCode::InvalidArgument, "delta_t must be finite and >= 0");
    }
    const auto pd = static_cast<double>(p);
    const auto rd = static_cast<double>(r);
    return params.lambda() * (pd - rd) + params.gamma() * delta_t * (2.0 * pd - rd);
  }

  inline constexpr double pwca_bound_tolerance = 1e-9;

  struct PwcaCheck {
    double distance;
    double bound;
    bool passed;
  };

  /// Distance between an approximation and its extremity series against the closed-form bound.
  template<class Distance = TwedDistance>
  PwcaCheck check_pwca_result(const PwcaResult& res, const TwedParams& params, Distance distance = {}) {
    const double d = distance(res.approx, res.extremities, params);
    const double bound = pwca_bound(res.approx.size(), res.segments.size(), res.delta_t, params);
    return {d, bound, d <= bound + pwca_bound_tolerance};
  }

  template<class Distance = TwedDistance>
  PwcaCheck verify_pwca_bound(const TimeSeries& a, std::size_t num_segments, const TwedParams& params,
                              Distance distance = {}) {
    return check_pwca_result(pwca_approximate(a, num_segments), params, distance);
  }

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Randomised bound check
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  struct PwcaBoundConfig {
    SeriesShape shape{1, 64, {1, 2}, 10.0};
    std::vector<ParamSetting> settings{{1.0, 0.5, Norm::L2}, {0.0, 1.0, Norm::L1}};
    std::size_t trials{100};
    std::uint64_t seed{42};
  };

  /// Every random series, every r in 1..p, every parameter setting.
  template<class Distance = TwedDistance>
  PropertyReport check_pwca_bound(const PwcaBoundConfig& cfg, Distance distance = {}) {
    require_trials(cfg.trials);
    cfg.shape.validate();
    if (cfg.shape.min_length == 0) { throw Error(ErrorCode::InvalidConfig, "series must have at least one sample"); }
    if (cfg.settings.empty()) { throw Error(ErrorCode::InvalidConfig, "no parameter settings"); }
    std::vector<TwedParams> settings;
    for (const auto& s : cfg.settings) { settings.push_back(s.to_params()); }

    ReportBuilder report("pwca_bound", pwca_bound_tolerance, cfg.seed);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(Suite::Pwca), t);
      const std::size_t dim = pick(rng, cfg.shape.dims);
      const TimeSeries a = cfg.shape.draw(rng, dim);
      report.count_trial();
      for (const auto& res : pwca_sweep(a)) {
        for (const auto& params : settings) {
          const auto check = check_pwca_result(res, params, distance);
          report.count_check();
          if (!check.passed) {
            report.violation(Witness{t, {a, res.approx, res.extremities}, {params}, check.distance, check.bound,
                                     check.distance - check.bound,
                                     "r=" + std::to_string(res.segments.size()) + " distance exceeds bound"});
          }
        }
      }
    }
    return std::move(report).finish();
  }

} // namespace twed
