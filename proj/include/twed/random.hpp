#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "series.hpp"

namespace twed {

  using Rng = std::mt19937_64;

  /// Independent stream per (seed, stream, index), so any trial can be replayed on its own.
  inline Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    std::seed_seq seq{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
  }

  /// `n` sorted, pairwise distinct draws from U[0, span).
  inline std::vector<double> random_timestamps(Rng& rng, std::size_t n, double span) {
    std::uniform_real_distribution<double> unif(0.0, span);
    std::vector<double> t(n);
    for (;;) {
      for (auto& x : t) { x = unif(rng); }
      std::sort(t.begin(), t.end());
      if (std::adjacent_find(t.begin(), t.end()) == t.end()) { return t; }
    }
  }

  /// Standard normal values observed at the given timestamps.
  inline TimeSeries random_series_at(Rng& rng, std::span<const double> times, std::size_t dim) {
    if (times.empty()) { return TimeSeries::empty_series(dim); }
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> values(times.size() * dim);
    for (auto& v : values) { v = normal(rng); }
    return TimeSeries::from_buffers(values, times, dim);
  }

  inline TimeSeries random_series(Rng& rng, std::size_t length, std::size_t dim, double span = 10.0) {
    const auto times = random_timestamps(rng, length, span);
    return random_series_at(rng, times, dim);
  }

  template<typename T>
  const T& pick(Rng& rng, const std::vector<T>& xs) {
    std::uniform_int_distribution<std::size_t> u(0, xs.size() - 1);
    return xs[u(rng)];
  }

  inline std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
    std::uniform_int_distribution<std::size_t> u(lo, hi);
    return u(rng);
  }

} // namespace twed
