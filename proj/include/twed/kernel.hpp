#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "series.hpp"

namespace twed {

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Local distance
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  namespace detail {

    template<Norm N>
    [[nodiscard]] inline double value_distance(const double* a, const double* b, std::size_t k) noexcept {
      if (k == 1) { return std::abs(a[0] - b[0]); }
      double acc = 0.0;
      for (std::size_t c = 0; c < k; ++c) {
        const double diff = a[c] - b[c];
        if constexpr (N == Norm::L1) {
          acc += std::abs(diff);
        } else if constexpr (N == Norm::L2) {
          acc += diff * diff;
        } else {
          acc = std::max(acc, std::abs(diff));
        }
      }
      if constexpr (N == Norm::L2) { return std::sqrt(acc); }
      return acc;
    }

    /// d(x, y) = |x - y|_p + gamma * |t_x - t_y|. Symmetric bit-for-bit in its arguments.
    template<Norm N>
    [[nodiscard]] inline double local(const double* xv, double xt, const double* yv, double yt,
                                      std::size_t k, double gamma) noexcept {
      return value_distance<N>(xv, yv, k) + gamma * std::abs(xt - yt);
    }

    /// Copy of a series with the origin sample prepended, so the kernels index 0..p without branching.
    struct PaddedBuffers {
      std::vector<double> values;
      std::vector<double> times;
      std::size_t dim;

      PaddedBuffers(const TimeSeries& s, std::size_t k) : values(k, 0.0), times(1, 0.0), dim(k) {
        values.insert(values.end(), s.values().begin(), s.values().end());
        times.insert(times.end(), s.timestamps().begin(), s.timestamps().end());
      }

      [[nodiscard]] std::size_t length() const noexcept { return times.size() - 1; }
      [[nodiscard]] const double* value(std::size_t i) const noexcept { return values.data() + i * dim; }
      [[nodiscard]] double time(std::size_t i) const noexcept { return times[i]; }
    };

    /// d(s'_i, s'_{i-1}) for i = 1..p; slot 0 is unused.
    template<Norm N>
    std::vector<double> successive_distances(const PaddedBuffers& s, double gamma) {
      std::vector<double> out(s.length() + 1, 0.0);
      for (std::size_t i = 1; i <= s.length(); ++i) {
        out[i] = local<N>(s.value(i), s.time(i), s.value(i - 1), s.time(i - 1), s.dim, gamma);
      }
      return out;
    }

    template<typename F>
    decltype(auto) dispatch_norm(Norm n, F&& f) {
      switch (n) {
        case Norm::L1: return f.template operator()<Norm::L1>();
        case Norm::L2: return f.template operator()<Norm::L2>();
        case Norm::Linf: break;
      }
      return f.template operator()<Norm::Linf>();
    }

  } // namespace detail

  /// |a - b|_p on value vectors.
  [[nodiscard]] inline double value_distance(std::span<const double> a, std::span<const double> b, Norm norm) {
    if (a.size() != b.size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "value vectors of size " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
    return detail::dispatch_norm(norm, [&]<Norm N>() { return detail::value_distance<N>(a.data(), b.data(), a.size()); });
  }

  /// Local sample distance d(x, y) = |x - y|_p + gamma * |t_x - t_y|.
  /// This is a sum of two Lp terms, not an Lp norm on R^{k+1}.
  [[nodiscard]] inline double local_dist(SampleView x, SampleView y, const TwedParams& params) {
    if (x.value.size() != y.value.size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "samples of dimension " + std::to_string(x.value.size()) + " and " + std::to_string(y.value.size()));
    }
    return detail::dispatch_norm(params.norm(), [&]<Norm N>() {
      return detail::local<N>(x.value.data(), x.timestamp, y.value.data(), y.timestamp, x.value.size(), params.gamma());
    });
  }

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Elementary edit costs (1-based indices over padded series)
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  namespace detail {
    inline void check_index(std::size_t i, std::size_t n, const char* what) {
      if (i < 1 || i > n) {
        throw Error(ErrorCode::IndexOutOfRange,
                    std::string(what) + " index " + std::to_string(i) + " outside 1.." + std::to_string(n));
      }
    }
  } // namespace detail

  /// Gamma(a'_i -> b'_j) = d(a'_i, b'_j) + d(a'_{i-1}, b'_{j-1}).
  [[nodiscard]] inline double cost_match(const PaddedSeries& a, std::size_t i, const PaddedSeries& b, std::size_t j,
                                         const TwedParams& params) {
    detail::check_index(i, a.size(), "A");
    detail::check_index(j, b.size(), "B");
    return local_dist(a.at(i), b.at(j), params) + local_dist(a.at(i - 1), b.at(j - 1), params);
  }

  /// Gamma(a'_i -> null) = d(a'_i, a'_{i-1}) + lambda.
  [[nodiscard]] inline double cost_delete_a(const PaddedSeries& a, std::size_t i, const TwedParams& params) {
    detail::check_index(i, a.size(), "A");
    return local_dist(a.at(i), a.at(i - 1), params) + params.lambda();
  }

  /// Gamma(null -> b'_j) = d(b'_{j-1}, b'_j) + lambda.
  [[nodiscard]] inline double cost_delete_b(const PaddedSeries& b, std::size_t j, const TwedParams& params) {
    detail::check_index(j, b.size(), "B");
    return local_dist(b.at(j - 1), b.at(j), params) + params.lambda();
  }

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Match rules
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  /// How the match cost combines the current-pair and previous-pair local distances. The kernels are
  /// parameterised on this so the property harness can be run against deliberately broken variants.
  struct StandardMatch {
    [[nodiscard]] static constexpr double combine(double current, double previous) noexcept { return current + previous; }
  };

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Distance
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  namespace detail {

    /// Two-row evaluation of the recurrence. `cols` should be the shorter series.
    /// Row 0 and column 0 accumulate d(s'_k, s'_{k-1}) without lambda; interior deletes add lambda.
    template<class Match, Norm N>
    double twed_rolling(const PaddedBuffers& rows, const PaddedBuffers& cols, double lambda, double gamma) {
      const std::size_t p = rows.length();
      const std::size_t q = cols.length();
      const std::size_t k = rows.dim;

      const auto row_steps = successive_distances<N>(rows, gamma);
      const auto col_steps = successive_distances<N>(cols, gamma);

      std::vector<double> prev(q + 1), curr(q + 1);
      std::vector<double> local_prev(q + 1), local_curr(q + 1);

      prev[0] = 0.0;
      for (std::size_t j = 1; j <= q; ++j) { prev[j] = prev[j - 1] + col_steps[j]; }
      for (std::size_t j = 0; j <= q; ++j) {
        local_prev[j] = local<N>(rows.value(0), rows.time(0), cols.value(j), cols.time(j), k, gamma);
      }

      for (std::size_t i = 1; i <= p; ++i) {
        const double* ai = rows.value(i);
        const double ti = rows.time(i);
        const double del_a = row_steps[i] + lambda;

        curr[0] = prev[0] + row_steps[i];
        local_curr[0] = local<N>(ai, ti, cols.value(0), cols.time(0), k, gamma);

        for (std::size_t j = 1; j <= q; ++j) {
          local_curr[j] = local<N>(ai, ti, cols.value(j), cols.time(j), k, gamma);
          const double via_del_a = prev[j] + del_a;
          const double via_match = prev[j - 1] + Match::combine(local_curr[j], local_prev[j - 1]);
          const double via_del_b = curr[j - 1] + (col_steps[j] + lambda);
          curr[j] = std::min(std::min(via_del_a, via_match), via_del_b);
        }
        std::swap(prev, curr);
        std::swap(local_prev, local_curr);
      }
      return prev[q];
    }

  } // namespace detail

  /// Time warp edit distance with a configurable match rule. O(p*q) time, O(min(p, q)) memory.
  template<class Match = StandardMatch>
  [[nodiscard]] double basic_twed(const TimeSeries& a, const TimeSeries& b, const TwedParams& params) {
    const std::size_t k = common_dim(a, b);
    // Evaluating on the transpose gives bit-identical results (every cost is symmetric), so the shorter
    // series always runs along the rolling rows.
    const bool swap = b.size() > a.size();
    const detail::PaddedBuffers rows(swap ? b : a, k);
    const detail::PaddedBuffers cols(swap ? a : b, k);
    return detail::dispatch_norm(params.norm(), [&]<Norm N>() {
      return detail::twed_rolling<Match, N>(rows, cols, params.lambda(), params.gamma());
    });
  }

  [[nodiscard]] inline double twed(const TimeSeries& a, const TimeSeries& b, const TwedParams& params) {
    return basic_twed<StandardMatch>(a, b, params);
  }

  /// Function object form, convenient wherever a distance is a template parameter.
  template<class Match = StandardMatch>
  struct BasicTwedDistance {
    double operator()(const TimeSeries& a, const TimeSeries& b, const TwedParams& params) const {
      return basic_twed<Match>(a, b, params);
    }
  };
  using TwedDistance = BasicTwedDistance<StandardMatch>;

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Full matrix and alignment
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  /// (p+1) x (q+1) grid; entry (i, j) is the distance between the length-i prefix of A and the length-j prefix of B.
  class CostMatrix {
  public:
    CostMatrix() = default;
    CostMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    [[nodiscard]] double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

  private:
    std::size_t rows_{0};
    std::size_t cols_{0};
    std::vector<double> data_;
  };

  enum class EditOp { Match, DeleteA, DeleteB };

  constexpr std::string_view to_string(EditOp op) {
    switch (op) {
      case EditOp::Match: return "match";
      case EditOp::DeleteA: return "delete_a";
      case EditOp::DeleteB: return "delete_b";
    }
    return "?";
  }

  /// One edit operation. (i, j) is the matrix cell the step arrives at: a Match consumes a'_i and b'_j,
  /// a DeleteA consumes a'_i (j is unchanged), a DeleteB consumes b'_j (i is unchanged).
  struct EditStep {
    EditOp op;
    std::size_t i;
    std::size_t j;
    double cost;

    friend bool operator==(const EditStep&, const EditStep&) = default;
  };

  struct EditPath {
    std::vector<EditStep> steps;

    /// Costs summed in path order, which reproduces the matrix entry bit-for-bit.
    [[nodiscard]] double total_cost() const noexcept {
      double sum = 0.0;
      for (const auto& s : steps) { sum += s.cost; }
      return sum;
    }
  };

  struct Alignment {
    double distance;
    EditPath path;
    CostMatrix matrix;
  };

  namespace detail {

    template<class Match, Norm N>
    Alignment twed_full(const PaddedBuffers& a, const PaddedBuffers& b, double lambda, double gamma) {
      const std::size_t p = a.length();
      const std::size_t q = b.length();
      const std::size_t k = a.dim;

      const auto a_steps = successive_distances<N>(a, gamma);
      const auto b_steps = successive_distances<N>(b, gamma);

      CostMatrix local_grid(p + 1, q + 1);
      for (std::size_t i = 0; i <= p; ++i) {
        for (std::size_t j = 0; j <= q; ++j) {
          local_grid(i, j) = local<N>(a.value(i), a.time(i), b.value(j), b.time(j), k, gamma);
        }
      }

      // Edge costs exactly as the recurrence evaluates them; the border carries no lambda.
      auto match_cost = [&](std::size_t i, std::size_t j) {
        return Match::combine(local_grid(i, j), local_grid(i - 1, j - 1));
      };
      auto del_a_cost = [&](std::size_t i, std::size_t j) { return j == 0 ? a_steps[i] : a_steps[i] + lambda; };
      auto del_b_cost = [&](std::size_t i, std::size_t j) { return i == 0 ? b_steps[j] : b_steps[j] + lambda; };

      CostMatrix dist(p + 1, q + 1);
      for (std::size_t j = 1; j <= q; ++j) { dist(0, j) = dist(0, j - 1) + del_b_cost(0, j); }
      for (std::size_t i = 1; i <= p; ++i) {
        dist(i, 0) = dist(i - 1, 0) + del_a_cost(i, 0);
        for (std::size_t j = 1; j <= q; ++j) {
          const double via_del_a = dist(i - 1, j) + del_a_cost(i, j);
          const double via_match = dist(i - 1, j - 1) + match_cost(i, j);
          const double via_del_b = dist(i, j - 1) + del_b_cost(i, j);
          dist(i, j) = std::min(std::min(via_del_a, via_match), via_del_b);
        }
      }

      // Cells from which (p, q) is reachable along exactly-tight edges, i.e. cells on some optimal path.
      std::vector<char> on_optimal((p + 1) * (q + 1), 0);
      auto on = [&](std::size_t i, std::size_t j) -> char& { return on_optimal[i * (q + 1) + j]; };
      on(p, q) = 1;
      for (std::size_t i = p + 1; i-- > 0;) {
        for (std::size_t j = q + 1; j-- > 0;) {
          if (!on(i, j)) { continue; }
          const double here = dist(i, j);
          if (i > 0 && j > 0 && dist(i - 1, j - 1) + match_cost(i, j) == here) { on(i - 1, j - 1) = 1; }
          if (i > 0 && dist(i - 1, j) + del_a_cost(i, j) == here) { on(i - 1, j) = 1; }
          if (j > 0 && dist(i, j - 1) + del_b_cost(i, j) == here) { on(i, j - 1) = 1; }
        }
      }

      // Walk forward choosing match, then delete-A, then delete-B among tight edges that stay optimal:
      // this yields the lexicographically smallest optimal path under that priority.
      EditPath path;
      path.steps.reserve(p + q);
      std::size_t i = 0, j = 0;
      while (i < p || j < q) {
        const double here = dist(i, j);
        if (i < p && j < q && on(i + 1, j + 1) && here + match_cost(i + 1, j + 1) == dist(i + 1, j + 1)) {
          ++i; ++j;
          path.steps.push_back({EditOp::Match, i, j, match_cost(i, j)});
        } else if (i < p && on(i + 1, j) && here + del_a_cost(i + 1, j) == dist(i + 1, j)) {
          ++i;
          path.steps.push_back({EditOp::DeleteA, i, j, del_a_cost(i, j)});
        } else {
          ++j;
          path.steps.push_back({EditOp::DeleteB, i, j, del_b_cost(i, j)});
        }
      }

      const double d = dist(p, q);
      return Alignment{d, std::move(path), std::move(dist)};
    }

  } // namespace detail

  /// Distance plus one optimal edit path and the full cost matrix. O(p*q) memory.
  /// Among several optimal paths, the one returned is smallest in path order with match < delete-A < delete-B.
  template<class Match = StandardMatch>
  [[nodiscard]] Alignment basic_twed_with_path(const TimeSeries& a, const TimeSeries& b, const TwedParams& params) {
    const std::size_t k = common_dim(a, b);
    const detail::PaddedBuffers pa(a, k);
    const detail::PaddedBuffers pb(b, k);
    return detail::dispatch_norm(params.norm(), [&]<Norm N>() {
      return detail::twed_full<Match, N>(pa, pb, params.lambda(), params.gamma());
    });
  }

  [[nodiscard]] inline Alignment twed_with_path(const TimeSeries& a, const TimeSeries& b, const TwedParams& params) {
    return basic_twed_with_path<StandardMatch>(a, b, params);
  }

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Lock-step reference distance
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  /// Sum over i of |a_i - b_i|_p for equal-length series; timestamps are ignored. Matching every index in
  /// lock-step costs at most twice this when both series share their timestamps.
  [[nodiscard]] inline double series_lp_distance(const TimeSeries& a, const TimeSeries& b, Norm norm) {
    if (a.size() != b.size()) {
      throw Error(ErrorCode::LengthMismatch,
                  "series lengths differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    const std::size_t k = common_dim(a, b);
    return detail::dispatch_norm(norm, [&]<Norm N>() {
      double sum = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        sum += detail::value_distance<N>(a.value(i).data(), b.value(i).data(), k);
      }
      return sum;
    });
  }

} // namespace twed
