#include "exiso/sample.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "exiso/error.hpp"
#include "exiso/stats.hpp"

namespace exiso {

const char* to_string(ScaleTag tag) {
  return tag == ScaleTag::original ? "original" : "frechet";
}

void BivariateSample::validate() const {
  const std::size_t n = size();
  if (n < 2) throw Error("ingest", "sample must contain at least 2 rows");
  if (x2.size() != n || t.size() != n)
    throw Error("ingest", "sample columns have inconsistent lengths");
  if (!month.empty() && month.size() != n)
    throw Error("ingest", "month column has inconsistent length");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x1[i]) || !std::isfinite(x2[i]))
      throw Error("ingest", "non-finite coordinate in retained row");
    if (i > 0 && t[i] <= t[i - 1])
      throw Error("ingest", "time index is not strictly increasing");
    if (scale == ScaleTag::frechet && (x1[i] <= 0.0 || x2[i] <= 0.0))
      throw Error("ingest", "frechet-scale sample has a non-positive coordinate");
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  out.push_back(field);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

bool is_missing(const std::string& field) {
  if (field.empty()) return true;
  std::string lower;
  for (char c : field) lower.push_back(static_cast<char>(std::tolower(c)));
  return lower == "na" || lower == "nan" || lower == "null";
}

bool parse_double(const std::string& field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

bool parse_int64(const std::string& field, std::int64_t& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

// Accepts YYYY-MM-DD; fills the serial day number and the month.
bool parse_iso_date(const std::string& field, std::int64_t& serial, int& month) {
  if (field.size() != 10 || field[4] != '-' || field[7] != '-') return false;
  int y = 0, m = 0, d = 0;
  auto num = [&](std::size_t pos, std::size_t len, int& out) {
    out = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (field[i] < '0' || field[i] > '9') return false;
      out = out * 10 + (field[i] - '0');
    }
    return true;
  };
  if (!num(0, 4, y) || !num(5, 2, m) || !num(8, 2, d)) return false;
  if (m < 1 || m > 12 || d < 1 || d > 31) return false;
  serial = days_from_civil(y, m, d);
  month = m;
  return true;
}

CoordinateSummary summarize(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  CoordinateSummary s;
  s.min = values.front();
  s.max = values.back();
  s.q25 = quantile_type7_sorted(values, 0.25);
  s.median = quantile_type7_sorted(values, 0.50);
  s.q75 = quantile_type7_sorted(values, 0.75);
  return s;
}

std::pair<BivariateSample, IngestReport> load_from_stream(std::istream& in,
                                                          const ColumnSpec& spec) {
  std::string line;
  if (!std::getline(in, line)) throw Error("ingest", "empty input: header row required");
  const auto header = split_csv_line(line);

  auto find_column = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (trim(header[i]) == name) return i;
    throw Error("ingest", "column not found: " + name);
  };

  const std::size_t i1 = find_column(spec.col1);
  const std::size_t i2 = find_column(spec.col2);
  const bool has_time = !spec.time_column.empty() && spec.time_column != "none";
  const std::size_t it = has_time ? find_column(spec.time_column) : 0;

  struct Row {
    std::int64_t t;
    double x1, x2;
    std::uint8_t month;
  };
  std::vector<Row> rows;
  IngestReport report;
  bool any_month = false;

  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++report.rows_read;
    const auto fields = split_csv_line(line);
    const std::size_t needed = std::max({i1, i2, has_time ? it : std::size_t{0}});
    if (fields.size() <= needed) {
      ++report.rows_dropped;
      continue;
    }
    const std::string f1 = trim(fields[i1]);
    const std::string f2 = trim(fields[i2]);
    if (is_missing(f1) || is_missing(f2)) {
      ++report.rows_dropped;
      continue;
    }
    Row row{};
    if (!parse_double(f1, row.x1) || !parse_double(f2, row.x2)) {
      ++report.rows_dropped;
      continue;
    }
    if (has_time) {
      const std::string ft = trim(fields[it]);
      int month = 0;
      if (parse_iso_date(ft, row.t, month)) {
        row.month = static_cast<std::uint8_t>(month);
        any_month = true;
      } else if (parse_int64(ft, row.t)) {
        row.month = 0;
      } else {
        ++report.rows_dropped;
        continue;
      }
    } else {
      row.t = static_cast<std::int64_t>(rows.size());
    }
    if (spec.negate1) row.x1 = -row.x1;
    if (spec.negate2) row.x2 = -row.x2;
    rows.push_back(row);
  }

  if (rows.size() < 2)
    throw Error("ingest", "fewer than 2 complete rows after parsing");

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.t < b.t; });
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].t == rows[i - 1].t)
      throw Error("ingest", "duplicate time index in input");

  BivariateSample sample;
  sample.labels = {spec.col1, spec.col2};
  sample.t.reserve(rows.size());
  sample.x1.reserve(rows.size());
  sample.x2.reserve(rows.size());
  if (any_month) sample.month.reserve(rows.size());
  std::array<bool, 13> seen{};
  for (const Row& row : rows) {
    sample.t.push_back(row.t);
    sample.x1.push_back(row.x1);
    sample.x2.push_back(row.x2);
    if (any_month) {
      sample.month.push_back(row.month);
      if (row.month >= 1 && row.month <= 12) seen[row.month] = true;
    }
  }
  for (int m = 1; m <= 12; ++m)
    if (seen[static_cast<std::size_t>(m)]) report.months_retained.push_back(m);
  report.summary[0] = summarize(sample.x1);
  report.summary[1] = summarize(sample.x2);
  sample.validate();
  return {std::move(sample), report};
}

}  // namespace

std::pair<BivariateSample, IngestReport> load_series(const std::string& path,
                                                     const ColumnSpec& spec) {
  std::ifstream in(path);
  if (!in) throw Error("ingest", "cannot open file: " + path);
  return load_from_stream(in, spec);
}

std::pair<BivariateSample, IngestReport> load_series_text(const std::string& text,
                                                          const ColumnSpec& spec) {
  std::istringstream in(text);
  return load_from_stream(in, spec);
}

BivariateSample subset_months(const BivariateSample& sample, const std::set<int>& months) {
  if (months.empty()) throw Error("ingest", "month subset is empty");
  for (int m : months)
    if (m < 1 || m > 12) throw Error("ingest", "month out of range 1..12");
  if (!sample.has_months())
    throw Error("ingest", "sample carries no calendar dates; cannot subset months");

  bool all = true;
  for (int m = 1; m <= 12; ++m) all = all && months.count(m) > 0;
  if (all) return sample;

  BivariateSample out;
  out.labels = sample.labels;
  out.scale = sample.scale;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (months.count(static_cast<int>(sample.month[i])) == 0) continue;
    out.t.push_back(sample.t[i]);
    out.x1.push_back(sample.x1[i]);
    out.x2.push_back(sample.x2[i]);
    out.month.push_back(sample.month[i]);
  }
  if (out.size() < 2) throw Error("ingest", "month subset left fewer than 2 rows");
  out.validate();
  return out;
}

void write_sample_csv(const std::string& path, const BivariateSample& sample) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw Error("ingest", "cannot open for writing: " + path);
  std::fprintf(f, "t,%s,%s\n", sample.labels[0].c_str(), sample.labels[1].c_str());
  for (std::size_t i = 0; i < sample.size(); ++i)
    std::fprintf(f, "%lld,%.17g,%.17g\n", static_cast<long long>(sample.t[i]),
                 sample.x1[i], sample.x2[i]);
  std::fclose(f);
}

}  // namespace exiso
