#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace exiso {

enum class ScaleTag { original, frechet };

const char* to_string(ScaleTag tag);

// Paired observations with a strictly increasing time index. `month` is
// populated only when the time column carried calendar dates; it is what
// subset_months keys on. On the frechet scale all coordinates are positive.
struct BivariateSample {
  std::vector<std::int64_t> t;
  std::vector<double> x1;
  std::vector<double> x2;
  std::vector<std::uint8_t> month;  // 1..12 per row; empty when dates unknown
  std::array<std::string, 2> labels{"x1", "x2"};
  ScaleTag scale = ScaleTag::original;

  std::size_t size() const { return x1.size(); }
  bool has_months() const { return !month.empty(); }

  // Checks the container invariants (n >= 2, t strictly increasing, finite
  // coordinates, positivity on the frechet scale). Throws Error on violation.
  void validate() const;
};

struct CoordinateSummary {
  double min = 0, q25 = 0, median = 0, q75 = 0, max = 0;
};

struct IngestReport {
  std::size_t rows_read = 0;     // data rows seen (header excluded)
  std::size_t rows_dropped = 0;  // missing values + unparseable rows
  std::vector<int> months_retained;
  std::array<CoordinateSummary, 2> summary{};
};

// Column selection for load_series. Columns are referenced by header name.
// time_column empty means "no time column": rows get a synthetic 0..n-1
// index and month-based subsetting is unavailable.
struct ColumnSpec {
  std::string col1;
  std::string col2;
  std::string time_column;  // empty = none
  bool negate1 = false;
  bool negate2 = false;
};

// Loads a CSV with a header row. Rows with missing or unparseable fields are
// dropped and counted; fewer than two complete rows is fatal. The result is
// sorted by time; duplicate time values are fatal. Parsing is locale-free
// (decimal point only).
std::pair<BivariateSample, IngestReport> load_series(const std::string& path,
                                                     const ColumnSpec& spec);

// Same, but reading from an already-loaded CSV text (used by tests).
std::pair<BivariateSample, IngestReport> load_series_text(const std::string& text,
                                                          const ColumnSpec& spec);

// Keeps only rows whose calendar month is in `months` (values 1..12).
// Requires the sample to carry dates; an empty result is fatal.
BivariateSample subset_months(const BivariateSample& sample, const std::set<int>& months);

// Writes the canonical sample CSV (header t,<label1>,<label2>).
void write_sample_csv(const std::string& path, const BivariateSample& sample);

}  // namespace exiso
