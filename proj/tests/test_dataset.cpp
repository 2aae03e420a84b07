#include <gtest/gtest.h>

#include <string>

#include "twed/dataset.hpp"
#include "twed/random.hpp"

using namespace twed;

namespace {
  Error error_of(auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e;
    }
    ADD_FAILURE() << "no twed::Error thrown";
    return Error(ErrorCode::Io, "none");
  }
} // namespace

TEST(TimestampedCsv, SingleSeries) {
  const auto ds = parse_timestamped_csv_text("t,v1\n1,0.5\n2,0.7\n");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_FALSE(ds.labeled());
  EXPECT_EQ(ds.dim(), 1u);
  EXPECT_EQ(ds.items[0].series, make_series({{1.0, {0.5}}, {2.0, {0.7}}}));
}

TEST(TimestampedCsv, OutOfOrderNamesTheLine) {
  const auto e = error_of([] { (void)parse_timestamped_csv_text("t,v1\n1,0.5\n3,0.1\n2,0.7\n"); });
  EXPECT_EQ(e.code(), ErrorCode::NonIncreasingTimestamps);
  EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
}

TEST(TimestampedCsv, EmptyDataSectionWarns) {
  const auto ds = parse_timestamped_csv_text("t,v1,v2\n\n");
  EXPECT_EQ(ds.size(), 0u);
  EXPECT_EQ(ds.warnings.size(), 1u);
}

TEST(TimestampedCsv, MultiSeriesWithLabels) {
  const auto ds = parse_timestamped_csv_text(
    "series_id,label,t,x,y\n"
    "s1,up,1,0,0\n"
    "s2,down,1,5,5\n"
    "s1,up,2,1,1\n"
    "s2,down,3,4,4\n");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_TRUE(ds.labeled());
  EXPECT_EQ(ds.items[0].id, "s1");
  EXPECT_EQ(*ds.items[1].label, "down");
  EXPECT_EQ(ds.items[1].series.timestamp(1), 3.0);
  EXPECT_EQ(ds.dim(), 2u);

  EXPECT_EQ(error_of([] { (void)parse_timestamped_csv_text("series_id,label,t,x\na,u,1,0\na,v,2,0\n"); }).code(),
            ErrorCode::InvalidArgument);
}

TEST(TimestampedCsv, HeaderAndFieldErrors) {
  EXPECT_EQ(error_of([] { (void)parse_timestamped_csv_text("time,v1\n1,2\n"); }).code(), ErrorCode::MalformedHeader);
  EXPECT_EQ(error_of([] { (void)parse_timestamped_csv_text("t\n1\n"); }).code(), ErrorCode::MalformedHeader);
  EXPECT_EQ(error_of([] { (void)parse_timestamped_csv_text(""); }).code(), ErrorCode::MalformedHeader);
  const auto e = error_of([] { (void)parse_timestamped_csv_text("t,v1\n1,abc\n"); });
  EXPECT_EQ(e.code(), ErrorCode::NonNumericField);
  EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  EXPECT_EQ(error_of([] { (void)parse_timestamped_csv_text("t,v1\n1,nan\n"); }).code(), ErrorCode::NonFiniteValue);
  EXPECT_EQ(error_of([] { (void)parse_timestamped_csv_text("t,v1\n1,2,3\n"); }).code(), ErrorCode::DimensionMismatch);
}

TEST(LabelTsv, ImplicitTimestamps) {
  const auto ds = parse_label_tsv_text("2\t0.1\t0.2\t0.3\n");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(*ds.items[0].label, "2");
  const auto& s = ds.items[0].series;
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.timestamp(0), 1.0);
  EXPECT_EQ(s.timestamp(2), 3.0);
  EXPECT_EQ(s.value(1)[0], 0.2);
}

TEST(LabelTsv, RaggedRowsAndSeparators) {
  const auto ds = parse_label_tsv_text("1 0.5 0.25\n\n2,1,2,3,4\r\n");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds.items[0].series.size(), 2u);
  EXPECT_EQ(ds.items[1].series.size(), 4u);
}

TEST(LabelTsv, LabelOnlyRowIsRejected) {
  EXPECT_EQ(error_of([] { (void)parse_label_tsv_text("1 0.5\n3\n"); }).code(), ErrorCode::EmptyRow);
  EXPECT_EQ(error_of([] { (void)parse_label_tsv_text("1 x\n"); }).code(), ErrorCode::NonNumericField);
}

TEST(Property, CsvRoundTripIsBitExact) {
  for (std::uint64_t t = 0; t < 50; ++t) {
    Rng rng = make_rng(31, 0, t);
    const std::size_t dim = 1 + t % 3;
    Dataset ds;
    const std::size_t n = uniform_size(rng, 1, 4);
    const bool labeled = t % 2 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      auto s = random_series(rng, uniform_size(rng, 1, 12), dim, 1e3);
      ds.items.push_back({"s" + std::to_string(i), labeled ? std::optional<std::string>("c" + std::to_string(i % 2))
                                                           : std::nullopt,
                          std::move(s)});
    }
    const auto text = write_timestamped_csv(ds);
    const auto back = parse_timestamped_csv_text(text);
    ASSERT_EQ(back.size(), ds.size());
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_EQ(back.items[i].series, ds.items[i].series) << text;
      ASSERT_EQ(back.items[i].label, ds.items[i].label);
    }
  }
}
