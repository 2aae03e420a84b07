#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>

#include "error.hpp"
#include "series.hpp"

namespace twed {

  /// Largest p + q accepted by twed_bruteforce; the number of monotone paths grows like the Delannoy numbers.
  inline constexpr std::size_t bruteforce_max_total_length = 12;

  namespace oracle_detail {

    // Written independently of the kernel's local distance on purpose: shared code would let a defect
    // in one hide in the other.
    inline double sample_distance(const TimeSeries& x, std::size_t xi, const TimeSeries& y, std::size_t yi,
                                  std::size_t dim, const TwedParams& params) {
      // Index 0 is the origin, i >= 1 is sample i-1.
      auto coord = [](const TimeSeries& s, std::size_t idx, std::size_t c) {
        return idx == 0 ? 0.0 : s.value(idx - 1)[c];
      };
      auto time = [](const TimeSeries& s, std::size_t idx) { return idx == 0 ? 0.0 : s.timestamp(idx - 1); };

      double values = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        const double diff = std::fabs(coord(x, xi, c) - coord(y, yi, c));
        switch (params.norm()) {
          case Norm::L1: values += diff; break;
          case Norm::L2: values += diff * diff; break;
          case Norm::Linf: values = diff > values ? diff : values; break;
        }
      }
      if (params.norm() == Norm::L2) { values = std::sqrt(values); }
      return values + params.gamma() * std::fabs(time(x, xi) - time(y, yi));
    }

    struct Enumerator {
      const TimeSeries& a;
      const TimeSeries& b;
      std::size_t dim;
      const TwedParams& params;
      double best = std::numeric_limits<double>::infinity();

      void walk(std::size_t i, std::size_t j, double cost) {
        if (i == a.size() && j == b.size()) {
          if (cost < best) { best = cost; }
          return;
        }
        if (i < a.size() && j < b.size()) {
          walk(i + 1, j + 1,
               cost + sample_distance(a, i + 1, b, j + 1, dim, params) + sample_distance(a, i, b, j, dim, params));
        }
        if (i < a.size()) {
          // Deleting along the j == 0 border is free of the gap penalty.
          const double gap = j == 0 ? 0.0 : params.lambda();
          walk(i + 1, j, cost + sample_distance(a, i + 1, a, i, dim, params) + gap);
        }
        if (j < b.size()) {
          const double gap = i == 0 ? 0.0 : params.lambda();
          walk(i, j + 1, cost + sample_distance(b, j + 1, b, j, dim, params) + gap);
        }
      }
    };

  } // namespace oracle_detail

  /// Minimum cost over every monotone edit path from (0, 0) to (p, q), enumerated without memoisation.
  /// Exponential; restricted to p + q <= 12.
  inline double twed_bruteforce(const TimeSeries& a, const TimeSeries& b, const TwedParams& params) {
    if (a.size() + b.size() > bruteforce_max_total_length) {
      throw Error(ErrorCode::InstanceTooLarge,
                  "p + q = " + std::to_string(a.size() + b.size()) + " exceeds "
                    + std::to_string(bruteforce_max_total_length));
    }
    const std::size_t dim = common_dim(a, b);
    oracle_detail::Enumerator e{a, b, dim, params};
    e.walk(0, 0, 0.0);
    return e.best;
  }

  /// |x - y| <= rel * max(|x|, |y|); zero only matches zero.
  inline bool relatively_equal(double x, double y, double rel) {
    return std::fabs(x - y) <= rel * std::max(std::fabs(x), std::fabs(y));
  }

} // namespace twed
