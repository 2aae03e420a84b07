#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "dataset.hpp"
#include "error.hpp"
#include "kernel.hpp"
#include "series.hpp"

namespace twed {

  /// Dense n x n row-major matrix.
  class DistanceMatrix {
  public:
    explicit DistanceMatrix(std::size_t n = 0) : n_(n), data_(n * n, 0.0) {}

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }
    [[nodiscard]] double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }

  private:
    std::size_t n_;
    std::vector<double> data_;
  };

  namespace detail {

    /// Runs body(task) for task in [0, count) on `jobs` threads. Exceptions are rethrown on the caller,
    /// lowest task index first so the reported error does not depend on scheduling.
    template<typename Body>
    void parallel_for(std::size_t count, std::size_t jobs, Body&& body) {
      jobs = std::max<std::size_t>(1, std::min(jobs, count));
      if (jobs == 1) {
        for (std::size_t t = 0; t < count; ++t) { body(t); }
        return;
      }
      std::atomic<std::size_t> next{0};
      std::mutex error_mutex;
      std::optional<std::pair<std::size_t, std::exception_ptr>> first_error;
      auto worker = [&] {
        for (std::size_t t = next++; t < count; t = next++) {
          try {
            body(t);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error || t < first_error->first) { first_error.emplace(t, std::current_exception()); }
          }
        }
      };
      std::vector<std::jthread> pool;
      pool.reserve(jobs);
      for (std::size_t w = 0; w < jobs; ++w) { pool.emplace_back(worker); }
      pool.clear();
      if (first_error) { std::rethrow_exception(first_error->second); }
    }

  } // namespace detail

  /// All pairwise distances. Each unordered pair is computed once and mirrored; the diagonal is set to 0.
  /// The result does not depend on `jobs`.
  template<class Distance = TwedDistance>
  DistanceMatrix distance_matrix(std::span<const TimeSeries> series, const TwedParams& params, std::size_t jobs = 1,
                                 Distance distance = {}) {
    const std::size_t n = series.size();
    const TimeSeries* reference = nullptr;
    for (const auto& s : series) {
      if (s.empty()) { continue; }
      if (reference) { (void)common_dim(*reference, s); } else { reference = &s; }
    }
    DistanceMatrix m(n);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) { pairs.emplace_back(i, j); }
    }
    detail::parallel_for(pairs.size(), jobs, [&](std::size_t t) {
      const auto [i, j] = pairs[t];
      m(i, j) = distance(series[i], series[j], params);
    });
    for (const auto& [i, j] : pairs) { m(j, i) = m(i, j); }
    return m;
  }

  /// Plain CSV, no header, 17 significant digits, rows in input order.
  inline std::string format_matrix_csv(const DistanceMatrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (j > 0) { out += ','; }
        out += format_number(m(i, j));
      }
      out += '\n';
    }
    return out;
  }

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // k nearest neighbours
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  struct Prediction {
    std::size_t index;
    std::string actual;
    std::string predicted;
    std::size_t nearest;
    double nearest_distance;
  };

  struct KnnResult {
    std::vector<Prediction> predictions;
    std::size_t correct{0};

    [[nodiscard]] double accuracy() const noexcept {
      return predictions.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(predictions.size());
    }
  };

  /// Majority vote among the k nearest training series. Distance ties go to the lower training index,
  /// vote ties to the label that sorts first.
  template<class Distance = TwedDistance>
  KnnResult knn_classify(const Dataset& train, const Dataset& test, std::size_t k, const TwedParams& params,
                         std::size_t jobs = 1, Distance distance = {}) {
    train.validate();
    test.validate();
    if (!train.labeled() || !test.labeled()) {
      throw Error(ErrorCode::Unlabeled, "k-NN needs labels on both training and test series");
    }
    if (k == 0 || k > train.size()) {
      throw Error(ErrorCode::InvalidArgument, "k = " + std::to_string(k) + " outside 1.." + std::to_string(train.size()));
    }
    if (train.dim() != 0 && test.dim() != 0 && train.dim() != test.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "train and test dimensions differ");
    }

    KnnResult result;
    result.predictions.resize(test.size());
    detail::parallel_for(test.size(), jobs, [&](std::size_t t) {
      std::vector<std::pair<double, std::size_t>> scored;
      scored.reserve(train.size());
      for (std::size_t i = 0; i < train.size(); ++i) {
        scored.emplace_back(distance(test.items[t].series, train.items[i].series, params), i);
      }
      std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k), scored.end());

      std::map<std::string, std::size_t> votes;
      for (std::size_t r = 0; r < k; ++r) { ++votes[*train.items[scored[r].second].label]; }
      const std::string* winner = nullptr;
      std::size_t best = 0;
      for (const auto& [label, count] : votes) {
        if (count > best) {
          best = count;
          winner = &label;
        }
      }
      result.predictions[t] = Prediction{t, *test.items[t].label, *winner, scored[0].second, scored[0].first};
    });
    for (const auto& p : result.predictions) { result.correct += p.actual == p.predicted ? 1 : 0; }
    return result;
  }

} // namespace twed
