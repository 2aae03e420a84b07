#include <gtest/gtest.h>

#include <vector>

#include "support/segmentation_oracle.hpp"
#include "twed/pwca.hpp"
#include "twed/random.hpp"

using namespace twed;

namespace {
  TimeSeries scalar_at_unit_times(std::initializer_list<double> values) {
    std::vector<Sample> rows;
    double t = 1.0;
    for (double v : values) { rows.push_back({t++, {v}}); }
    return make_series(rows);
  }

  ErrorCode code_of(auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << "no twed::Error thrown";
    return ErrorCode::Io;
  }
} // namespace

TEST(Pwca, TwoPlateaus) {
  const auto x = scalar_at_unit_times({1, 1, 5, 5});
  const auto res = pwca_approximate(x, 2);
  ASSERT_EQ(res.segments.size(), 2u);
  EXPECT_EQ(res.segments[0], (Segment{0, 1, {1.0}}));
  EXPECT_EQ(res.segments[1], (Segment{2, 3, {5.0}}));
  EXPECT_EQ(res.sse, 0.0);
  EXPECT_EQ(res.approx, x);
  EXPECT_EQ(segment_extremities(res), make_series({{2.0, {1.0}}, {4.0, {5.0}}}));
  EXPECT_EQ(mean_intrasegment_dt(res), 1.0);

  // Exhaustive check of the three cut placements.
  const auto brute = testkit::exhaustive_segmentation(x, 2);
  EXPECT_EQ(brute.ends, (std::vector<std::size_t>{1, 3}));

  const auto check = verify_pwca_bound(x, 2, TwedParams(1.0, 0.5));
  EXPECT_EQ(check.bound, 5.0);
  EXPECT_EQ(check.distance, 4.0);
  EXPECT_TRUE(check.passed);
}

TEST(Pwca, OneSegmentPerSample) {
  const auto x = scalar_at_unit_times({3, -1, 4, 1, 5});
  const auto res = pwca_approximate(x, 5);
  EXPECT_EQ(res.sse, 0.0);
  EXPECT_EQ(res.approx, x);
  EXPECT_EQ(res.extremities, x);
  EXPECT_EQ(res.delta_t, 0.0);
  const auto check = verify_pwca_bound(x, 5, TwedParams(1.0, 1.0));
  EXPECT_EQ(check.distance, 0.0);
  EXPECT_TRUE(check.passed);
}

TEST(Pwca, SingleSegmentIsGlobalMean) {
  const auto x = scalar_at_unit_times({1, 2, 6});
  const auto res = pwca_approximate(x, 1);
  ASSERT_EQ(res.segments.size(), 1u);
  EXPECT_EQ(res.segments[0].constant[0], 3.0);
  ASSERT_EQ(res.extremities.size(), 1u);
  EXPECT_EQ(res.extremities.timestamp(0), 3.0);
  EXPECT_EQ(res.sse, 14.0);
}

TEST(Pwca, MeanIntrasegmentGap) {
  const auto x = make_series({{1.0, {0.0}}, {2.0, {0.0}}, {4.0, {0.0}}});
  EXPECT_EQ(pwca_approximate(x, 1).delta_t, 1.5);
}

TEST(Pwca, TiesPickSmallestBoundaries) {
  const auto x = scalar_at_unit_times({1, 1, 1});
  const auto res = pwca_approximate(x, 2);
  EXPECT_EQ(res.segments[0].last, 0u);
}

TEST(Pwca, AlreadyPiecewiseConstantIsReproduced) {
  const auto x = make_series({{0.5, {2.0, 0.0}}, {1.0, {2.0, 0.0}}, {1.5, {7.0, 1.0}}, {3.0, {7.0, 1.0}},
                              {3.5, {7.0, 1.0}}, {4.0, {-1.0, 4.0}}});
  for (std::size_t r : {3u, 4u, 6u}) {
    const auto res = pwca_approximate(x, r);
    EXPECT_EQ(res.sse, 0.0);
    EXPECT_EQ(res.approx, x);
  }
}

TEST(Pwca, Errors) {
  EXPECT_EQ(code_of([] { (void)pwca_approximate(TimeSeries{}, 1); }), ErrorCode::EmptySeries);
  EXPECT_EQ(code_of([] { (void)pwca_approximate(scalar_at_unit_times({1, 2}), 3); }), ErrorCode::TooManySegments);
  EXPECT_EQ(code_of([] { (void)pwca_approximate(scalar_at_unit_times({1, 2}), 0); }), ErrorCode::InvalidArgument);
}

TEST(PwcaBound, Formula) {
  EXPECT_EQ(pwca_bound(4, 2, 1.0, TwedParams(1.0, 0.5)), 5.0);
  EXPECT_EQ(pwca_bound(5, 5, 0.0, TwedParams(1.0, 0.5)), 0.0);
  EXPECT_EQ(pwca_bound(3, 1, 2.0, TwedParams(0.0, 1.0)), 10.0);
  EXPECT_EQ(code_of([] { (void)pwca_bound(3, 4, 1.0, TwedParams(0.0, 1.0)); }), ErrorCode::TooManySegments);
}

TEST(Property, SegmentationMatchesExhaustiveSearch) {
  for (std::uint64_t t = 0; t < 120; ++t) {
    Rng rng = make_rng(21, 0, t);
    const auto x = random_series(rng, uniform_size(rng, 1, 10), 1 + t % 2);
    const auto sweep = pwca_sweep(x);
    for (std::size_t r = 1; r <= x.size(); ++r) {
      const auto& res = sweep[r - 1];
      const auto brute = testkit::exhaustive_segmentation(x, r);
      ASSERT_EQ(res.sse, brute.sse) << "trial " << t << " r " << r;
      ASSERT_EQ(res.segments.size(), r);
      ASSERT_EQ(res.approx.size(), x.size());
      // Contiguous partition, constants applied throughout.
      std::size_t expect_first = 0;
      for (const auto& seg : res.segments) {
        ASSERT_EQ(seg.first, expect_first);
        for (std::size_t i = seg.first; i <= seg.last; ++i) {
          ASSERT_EQ(res.approx.timestamp(i), x.timestamp(i));
          for (std::size_t c = 0; c < x.dim(); ++c) { ASSERT_EQ(res.approx.value(i)[c], seg.constant[c]); }
        }
        expect_first = seg.last + 1;
      }
      ASSERT_EQ(expect_first, x.size());
      ASSERT_EQ(pwca_approximate(x, r).segments, res.segments);
    }
  }
}

TEST(Property, BoundHoldsOnRandomSeries) {
  PwcaBoundConfig cfg;
  cfg.trials = 20;
  cfg.shape.max_length = 24;
  EXPECT_TRUE(check_pwca_bound(cfg).passed());
}
