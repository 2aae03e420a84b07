#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace twed {

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Parameters
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  /// Minkowski exponent used for value vectors (and, trivially, for the scalar timestamp gap).
  enum class Norm { L1, L2, Linf };

  constexpr std::string_view to_string(Norm n) {
    switch (n) {
      case Norm::L1: return "1";
      case Norm::L2: return "2";
      case Norm::Linf: return "inf";
    }
    return "?";
  }

  /// Accepts "1", "2", "inf" (also "infinity", "Linf", case-sensitive on the leading L only).
  inline Norm parse_norm(std::string_view s) {
    if (s == "1" || s == "L1") { return Norm::L1; }
    if (s == "2" || s == "L2") { return Norm::L2; }
    if (s == "inf" || s == "infinity" || s == "Linf") { return Norm::Linf; }
    throw Error(ErrorCode::InvalidParams, "unknown norm '" + std::string(s) + "', expected 1, 2 or inf");
  }

  /// Gap penalty lambda >= 0 and stiffness gamma > 0. Both are required for the distance to separate
  /// distinct series, so the constructor refuses anything else.
  class TwedParams {
  public:
    TwedParams(double lambda, double gamma, Norm norm = Norm::L2) : lambda_(lambda), gamma_(gamma), norm_(norm) {
      if (!std::isfinite(lambda) || lambda < 0) {
        throw Error(ErrorCode::InvalidParams, "lambda must be finite and >= 0, got " + std::to_string(lambda));
      }
      if (!std::isfinite(gamma) || gamma <= 0) {
        throw Error(ErrorCode::InvalidParams, "gamma must be finite and > 0, got " + std::to_string(gamma));
      }
    }

    [[nodiscard]] double lambda() const noexcept { return lambda_; }
    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    [[nodiscard]] Norm norm() const noexcept { return norm_; }

    friend bool operator==(const TwedParams&, const TwedParams&) = default;

  private:
    double lambda_;
    double gamma_;
    Norm norm_;
  };

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Samples and series
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  /// Owning row used to build series.
  struct Sample {
    double timestamp{};
    std::vector<double> value;
  };

  /// Non-owning view of one observation.
  struct SampleView {
    std::span<const double> value;
    double timestamp{};
  };

  /// A finite timestamped series with values in R^k. Immutable once built; the only ways in are
  /// make_series and TimeSeries::from_buffers, both of which validate.
  ///
  /// The empty series carries dimension 0 unless one is given explicitly, and is dimension-compatible with
  /// every other series.
  class TimeSeries {
  public:
    TimeSeries() = default;

    static TimeSeries empty_series(std::size_t dim = 0) {
      TimeSeries s;
      s.dim_ = dim;
      return s;
    }

    /// Validating constructor over flat row-major buffers (values.size() == times.size() * dim).
    static TimeSeries from_buffers(std::span<const double> values, std::span<const double> times, std::size_t dim) {
      if (times.empty()) {
        if (!values.empty()) { throw Error(ErrorCode::DimensionMismatch, "values given for a series without timestamps"); }
        return empty_series(dim);
      }
      if (dim == 0) { throw Error(ErrorCode::DimensionMismatch, "dimension must be >= 1"); }
      if (values.size() != times.size() * dim) {
        throw Error(ErrorCode::DimensionMismatch,
                    "value buffer holds " + std::to_string(values.size()) + " numbers, expected "
                      + std::to_string(times.size()) + " x " + std::to_string(dim));
      }
      TimeSeries s;
      s.dim_ = dim;
      s.values_.assign(values.begin(), values.end());
      s.times_.assign(times.begin(), times.end());
      s.validate();
      return s;
    }

    [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
    [[nodiscard]] bool empty() const noexcept { return times_.empty(); }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    /// 0-based access.
    [[nodiscard]] std::span<const double> value(std::size_t i) const noexcept {
      return {values_.data() + i * dim_, dim_};
    }
    [[nodiscard]] double timestamp(std::size_t i) const noexcept { return times_[i]; }
    [[nodiscard]] SampleView sample(std::size_t i) const noexcept { return {value(i), times_[i]}; }

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::span<const double> timestamps() const noexcept { return times_; }

    /// Series compare equal when every sample matches exactly; all empty series are equal.
    friend bool operator==(const TimeSeries& a, const TimeSeries& b) {
      if (a.size() != b.size()) { return false; }
      if (a.empty()) { return true; }
      return a.dim_ == b.dim_ && a.times_ == b.times_ && a.values_ == b.values_;
    }

  private:
    friend TimeSeries make_series(std::span<const Sample> rows);

    void validate() const {
      for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!std::isfinite(times_[i])) {
          throw Error(ErrorCode::NonFiniteValue, "timestamp of sample " + std::to_string(i) + " is not finite");
        }
        for (double v : value(i)) {
          if (!std::isfinite(v)) {
            throw Error(ErrorCode::NonFiniteValue, "value of sample " + std::to_string(i) + " is not finite");
          }
        }
        if (i > 0 && !(times_[i] > times_[i - 1])) {
          throw Error(ErrorCode::NonIncreasingTimestamps,
                      "sample " + std::to_string(i) + " has timestamp " + std::to_string(times_[i])
                        + " not greater than the previous " + std::to_string(times_[i - 1]));
        }
      }
    }

    std::size_t dim_{0};
    std::vector<double> values_;
    std::vector<double> times_;
  };

  /// Build a validated series from rows. Row order is preserved; every row must have the same k >= 1.
  inline TimeSeries make_series(std::span<const Sample> rows) {
    TimeSeries s;
    if (rows.empty()) { return s; }
    s.dim_ = rows.front().value.size();
    if (s.dim_ == 0) { throw Error(ErrorCode::DimensionMismatch, "sample 0 has an empty value vector"); }
    s.values_.reserve(rows.size() * s.dim_);
    s.times_.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].value.size() != s.dim_) {
        throw Error(ErrorCode::DimensionMismatch,
                    "sample " + std::to_string(i) + " has dimension " + std::to_string(rows[i].value.size())
                      + ", expected " + std::to_string(s.dim_));
      }
      s.values_.insert(s.values_.end(), rows[i].value.begin(), rows[i].value.end());
      s.times_.push_back(rows[i].timestamp);
    }
    s.validate();
    return s;
  }

  inline TimeSeries make_series(std::initializer_list<Sample> rows) {
    return make_series(std::span<const Sample>(rows.begin(), rows.size()));
  }

  inline TimeSeries make_series(const std::vector<Sample>& rows) { return make_series(std::span<const Sample>(rows)); }

  /// Scalar convenience: values[i] observed at times[i].
  inline TimeSeries make_scalar_series(std::span<const double> times, std::span<const double> values) {
    if (times.size() != values.size()) {
      throw Error(ErrorCode::LengthMismatch, "times and values differ in length");
    }
    return TimeSeries::from_buffers(values, times, 1);
  }

  /// Two series can be compared when either is empty or they share k.
  inline bool dims_compatible(const TimeSeries& a, const TimeSeries& b) noexcept {
    return a.empty() || b.empty() || a.dim() == b.dim();
  }

  inline std::size_t common_dim(const TimeSeries& a, const TimeSeries& b) {
    if (!dims_compatible(a, b)) {
      throw Error(ErrorCode::DimensionMismatch,
                  "series dimensions differ: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
    return a.empty() ? b.dim() : a.dim();
  }

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Padded series: 1-based view with a virtual origin sample at index 0
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  /// sample(0) is the origin (zero vector at time 0), sample(i) for 1 <= i <= size() is the (i-1)th sample
  /// of the underlying series. Holds a reference: the series must outlive the view.
  class PaddedSeries {
  public:
    explicit PaddedSeries(const TimeSeries& series, std::size_t dim)
      : series_(&series), origin_(dim, 0.0) {
      if (!series.empty() && series.dim() != dim) {
        throw Error(ErrorCode::DimensionMismatch, "padding dimension differs from the series dimension");
      }
    }

    /// Number of real samples (the origin is not counted).
    [[nodiscard]] std::size_t size() const noexcept { return series_->size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return origin_.size(); }
    [[nodiscard]] const TimeSeries& series() const noexcept { return *series_; }

    [[nodiscard]] SampleView sample(std::size_t i) const {
      if (i > size()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "index " + std::to_string(i) + " outside 0.." + std::to_string(size()));
      }
      return at(i);
    }

    /// Unchecked.
    [[nodiscard]] SampleView at(std::size_t i) const noexcept {
      return i == 0 ? SampleView{origin_, 0.0} : series_->sample(i - 1);
    }

  private:
    const TimeSeries* series_;
    std::vector<double> origin_;
  };

  inline PaddedSeries pad(const TimeSeries& series) { return PaddedSeries(series, series.dim()); }
  inline PaddedSeries pad(const TimeSeries& series, std::size_t dim) { return PaddedSeries(series, dim); }
  // Binding a temporary would dangle.
  PaddedSeries pad(TimeSeries&&) = delete;
  PaddedSeries pad(TimeSeries&&, std::size_t) = delete;

} // namespace twed
