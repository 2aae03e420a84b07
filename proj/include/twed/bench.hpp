#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "error.hpp"
#include "kernel.hpp"
#include "random.hpp"
#include "series.hpp"

namespace twed {

  struct BenchRow {
    std::size_t length;
    std::size_t repetitions;
    double min_ms;
    double median_ms;
    /// min_ms relative to the previous row; 0 for the first row.
    double ratio;
    /// Ratio allowed for quadratic growth from the previous length (1.125 * (L / L_prev)^2).
    double allowed_ratio;
  };

  /// Times one distance between two random scalar series of each length.
  inline std::vector<BenchRow> run_bench(const std::vector<std::size_t>& lengths, std::size_t repetitions,
                                         const TwedParams& params, std::uint64_t seed = 42) {
    if (repetitions == 0) { throw Error(ErrorCode::InvalidArgument, "repetitions must be >= 1"); }
    if (lengths.empty()) { throw Error(ErrorCode::InvalidArgument, "no lengths given"); }
    for (auto l : lengths) {
      if (l == 0) { throw Error(ErrorCode::InvalidArgument, "lengths must be >= 1"); }
    }

    std::vector<BenchRow> rows;
    volatile double sink = 0.0;
    for (std::size_t li = 0; li < lengths.size(); ++li) {
      const std::size_t n = lengths[li];
      Rng rng = make_rng(seed, 0xbe7c, li);
      const auto a = random_series(rng, n, 1, static_cast<double>(n));
      const auto b = random_series(rng, n, 1, static_cast<double>(n));
      sink = sink + twed(a, b, params);  // warm-up

      std::vector<double> ms;
      ms.reserve(repetitions);
      for (std::size_t r = 0; r < repetitions; ++r) {
        const auto start = std::chrono::steady_clock::now();
        sink = sink + twed(a, b, params);
        const auto stop = std::chrono::steady_clock::now();
        ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
      }
      std::sort(ms.begin(), ms.end());
      BenchRow row{n, repetitions, ms.front(), ms[ms.size() / 2], 0.0, 0.0};
      if (!rows.empty()) {
        const double growth = static_cast<double>(n) / static_cast<double>(rows.back().length);
        row.ratio = row.min_ms / rows.back().min_ms;
        row.allowed_ratio = 1.125 * growth * growth;
      }
      rows.push_back(row);
    }
    (void)sink;
    return rows;
  }

  /// True when every consecutive growth is within its quadratic allowance. Only meaningful for increasing lengths.
  inline bool scaling_is_quadratic(const std::vector<BenchRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].length > rows[i - 1].length && rows[i].ratio > rows[i].allowed_ratio) { return false; }
    }
    return true;
  }

} // namespace twed
