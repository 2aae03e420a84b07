#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "error.hpp"
#include "series.hpp"

namespace twed {

  struct LabeledSeries {
    std::string id;
    std::optional<std::string> label;
    TimeSeries series;
  };

  /// A named collection of series of one dimension. Labels are either on every series or on none.
  struct Dataset {
    std::string name;
    std::string format;
    std::vector<LabeledSeries> items;
    std::vector<std::string> warnings;

    [[nodiscard]] std::size_t size() const noexcept { return items.size(); }
    [[nodiscard]] bool labeled() const noexcept { return !items.empty() && items.front().label.has_value(); }

    [[nodiscard]] std::size_t dim() const noexcept {
      for (const auto& it : items) {
        if (!it.series.empty()) { return it.series.dim(); }
      }
      return 0;
    }

    [[nodiscard]] std::vector<TimeSeries> series() const {
      std::vector<TimeSeries> out;
      out.reserve(items.size());
      for (const auto& it : items) { out.push_back(it.series); }
      return out;
    }

    /// Throws DimensionMismatch or Unlabeled when the dataset invariants do not hold.
    void validate() const {
      const std::size_t k = dim();
      for (const auto& it : items) {
        if (!it.series.empty() && it.series.dim() != k) {
          throw Error(ErrorCode::DimensionMismatch, "series '" + it.id + "' has dimension "
                                                      + std::to_string(it.series.dim()) + ", expected " + std::to_string(k));
        }
        if (it.label.has_value() != labeled()) {
          throw Error(ErrorCode::Unlabeled, "labels must be present on all series or on none");
        }
      }
    }
  };

  namespace detail {

    inline std::string_view trim(std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) { s.remove_prefix(1); }
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) { s.remove_suffix(1); }
      return s;
    }

    inline std::vector<std::string_view> split_lines(std::string_view text) {
      std::vector<std::string_view> lines;
      std::size_t start = 0;
      while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        const auto end = nl == std::string_view::npos ? text.size() : nl;
        lines.push_back(text.substr(start, end - start));
        if (nl == std::string_view::npos) { break; }
        start = nl + 1;
      }
      return lines;
    }

    inline std::vector<std::string_view> split_on(std::string_view line, char sep) {
      std::vector<std::string_view> out;
      std::size_t start = 0;
      for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) { return out; }
        start = pos + 1;
      }
    }

    /// Whitespace and/or comma separated tokens.
    inline std::vector<std::string_view> split_tokens(std::string_view line) {
      std::vector<std::string_view> out;
      std::size_t i = 0;
      auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
      while (i < line.size()) {
        while (i < line.size() && is_sep(line[i])) { ++i; }
        const std::size_t start = i;
        while (i < line.size() && !is_sep(line[i])) { ++i; }
        if (i > start) { out.push_back(line.substr(start, i - start)); }
      }
      return out;
    }

    inline double parse_number(std::string_view field, std::size_t line_no, std::size_t column) {
      double v = 0.0;
      const char* first = field.data();
      const char* last = field.data() + field.size();
      if (!field.empty() && *first == '+') { ++first; }
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (field.empty() || ec != std::errc() || ptr != last) {
        throw Error(ErrorCode::NonNumericField, "line " + std::to_string(line_no) + ", column "
                                                  + std::to_string(column) + ": '" + std::string(field) + "'");
      }
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonFiniteValue, "line " + std::to_string(line_no) + ", column "
                                                 + std::to_string(column) + ": '" + std::string(field) + "'");
      }
      return v;
    }

    inline std::string read_file(const std::string& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) { throw Error(ErrorCode::Io, "cannot open '" + path + "'"); }
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

  } // namespace detail

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Timestamped CSV: [series_id,][label,]t,v1,...,vk
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  inline Dataset parse_timestamped_csv_text(std::string_view text, std::string name = "") {
    Dataset ds;
    ds.name = std::move(name);
    ds.format = "csv";

    const auto lines = detail::split_lines(text);
    std::size_t header_line = 0;
    while (header_line < lines.size() && detail::trim(lines[header_line]).empty()) { ++header_line; }
    if (header_line == lines.size()) { throw Error(ErrorCode::MalformedHeader, "missing header line"); }

    const auto header = detail::split_on(lines[header_line], ',');
    std::size_t col = 0;
    const bool has_id = header.size() > col && header[col] == "series_id";
    if (has_id) { ++col; }
    const bool has_label = header.size() > col && header[col] == "label";
    if (has_label) { ++col; }
    if (header.size() <= col || header[col] != "t") {
      throw Error(ErrorCode::MalformedHeader, "expected header '[series_id,][label,]t,v1,...,vk', got '"
                                                + std::string(detail::trim(lines[header_line])) + "'");
    }
    const std::size_t t_col = col;
    const std::size_t dim = header.size() - t_col - 1;
    if (dim == 0) { throw Error(ErrorCode::MalformedHeader, "header names no value columns"); }
    for (std::size_t c = t_col + 1; c < header.size(); ++c) {
      if (header[c].empty()) { throw Error(ErrorCode::MalformedHeader, "empty column name in header"); }
    }

    struct Pending {
      std::string id;
      std::optional<std::string> label;
      std::vector<Sample> rows;
      std::size_t last_line = 0;
    };
    std::vector<Pending> pending;
    std::map<std::string, std::size_t, std::less<>> index;

    for (std::size_t ln = header_line + 1; ln < lines.size(); ++ln) {
      const std::size_t line_no = ln + 1;
      if (detail::trim(lines[ln]).empty()) { continue; }
      const auto fields = detail::split_on(lines[ln], ',');
      if (fields.size() != header.size()) {
        throw Error(ErrorCode::DimensionMismatch, "line " + std::to_string(line_no) + " has " + std::to_string(fields.size())
                                                    + " fields, header has " + std::to_string(header.size()));
      }
      const std::string id = has_id ? std::string(fields[0]) : std::string("0");
      auto it = index.find(id);
      if (it == index.end()) {
        it = index.emplace(id, pending.size()).first;
        pending.push_back(Pending{id, std::nullopt, {}, 0});
        if (has_label) { pending.back().label = std::string(fields[has_id ? 1 : 0]); }
      }
      Pending& ser = pending[it->second];
      if (has_label && *ser.label != fields[has_id ? 1 : 0]) {
        throw Error(ErrorCode::InvalidArgument, "line " + std::to_string(line_no) + ": label of series '" + id
                                                  + "' changes from '" + *ser.label + "'");
      }

      Sample s;
      s.timestamp = detail::parse_number(fields[t_col], line_no, t_col + 1);
      s.value.reserve(dim);
      for (std::size_t c = t_col + 1; c < fields.size(); ++c) {
        s.value.push_back(detail::parse_number(fields[c], line_no, c + 1));
      }
      if (!ser.rows.empty() && !(s.timestamp > ser.rows.back().timestamp)) {
        throw Error(ErrorCode::NonIncreasingTimestamps,
                    "line " + std::to_string(line_no) + ": t=" + std::string(fields[t_col]) + " of series '" + id
                      + "' does not exceed the previous timestamp (line " + std::to_string(ser.last_line) + ")");
      }
      ser.last_line = line_no;
      ser.rows.push_back(std::move(s));
    }

    for (auto& p : pending) {
      ds.items.push_back(LabeledSeries{std::move(p.id), std::move(p.label), make_series(p.rows)});
    }
    if (ds.items.empty()) { ds.warnings.push_back("no data rows after the header; dataset is empty"); }
    return ds;
  }

  inline Dataset parse_timestamped_csv(const std::string& path) {
    return parse_timestamped_csv_text(detail::read_file(path), path);
  }

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Label TSV (UCR style): label v1 v2 ... vn, implicit timestamps 1..n
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  inline Dataset parse_label_tsv_text(std::string_view text, std::string name = "") {
    Dataset ds;
    ds.name = std::move(name);
    ds.format = "tsv";
    const auto lines = detail::split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
      const auto tokens = detail::split_tokens(lines[ln]);
      if (tokens.empty()) { continue; }
      if (tokens.size() == 1) {
        throw Error(ErrorCode::EmptyRow, "line " + std::to_string(ln + 1) + " has a label but no values");
      }
      std::vector<double> values, times;
      values.reserve(tokens.size() - 1);
      times.reserve(tokens.size() - 1);
      for (std::size_t c = 1; c < tokens.size(); ++c) {
        values.push_back(detail::parse_number(tokens[c], ln + 1, c + 1));
        times.push_back(static_cast<double>(c));
      }
      ds.items.push_back(LabeledSeries{std::to_string(ds.items.size()), std::string(tokens[0]),
                                       TimeSeries::from_buffers(values, times, 1)});
    }
    if (ds.items.empty()) { ds.warnings.push_back("no rows; dataset is empty"); }
    return ds;
  }

  inline Dataset parse_label_tsv(const std::string& path) { return parse_label_tsv_text(detail::read_file(path), path); }

  /// ".csv" files are timestamped CSV, anything else is label TSV, unless `format` ("csv" / "tsv") says otherwise.
  inline Dataset load_dataset(const std::string& path, std::string_view format = "auto") {
    if (format == "csv") { return parse_timestamped_csv(path); }
    if (format == "tsv") { return parse_label_tsv(path); }
    if (format != "auto") { throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(format) + "'"); }
    const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
    return csv ? parse_timestamped_csv(path) : parse_label_tsv(path);
  }

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Output
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  /// printf-style %.Ng; 17 digits round-trips every double.
  inline std::string format_number(double x, int significant = 17) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant, x);
    return buf;
  }

  /// Inverse of parse_timestamped_csv_text. Writes series_id (and label) columns unless the dataset is a
  /// single unlabeled series.
  inline std::string write_timestamped_csv(const Dataset& ds) {
    ds.validate();
    const std::size_t k = std::max<std::size_t>(ds.dim(), 1);
    const bool with_id = ds.items.size() > 1 || ds.labeled();
    std::string out;
    if (with_id) { out += "series_id,"; }
    if (ds.labeled()) { out += "label,"; }
    out += "t";
    for (std::size_t c = 1; c <= k; ++c) { out += ",v" + std::to_string(c); }
    out += '\n';
    for (const auto& it : ds.items) {
      for (std::size_t i = 0; i < it.series.size(); ++i) {
        if (with_id) { out += it.id + ","; }
        if (it.label) { out += *it.label + ","; }
        out += format_number(it.series.timestamp(i));
        for (double v : it.series.value(i)) { out += "," + format_number(v); }
        out += '\n';
      }
    }
    return out;
  }

} // namespace twed
