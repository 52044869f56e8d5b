#include "ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

namespace maxarma::ingest {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_missing(const std::string& cell) {
  return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan" || cell == "na";
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name,
                         const std::string& path) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
  std::string names;
  for (const auto& h : header) names += (names.empty() ? "" : ", ") + h;
  throw IngestError(path + ": no column '" + name + "' (available: " + names + ")");
}

// Month of an ISO-like date "YYYY-MM..." or "YYYY/MM...".
int month_of(const std::string& date) {
  int y = 0, m = 0;
  const char* b = date.data();
  const char* e = b + date.size();
  auto r = std::from_chars(b, e, y);
  if (r.ec != std::errc() || r.ptr == e || (*r.ptr != '-' && *r.ptr != '/')) return 0;
  r = std::from_chars(r.ptr + 1, e, m);
  if (r.ec != std::errc() || m < 1 || m > 12) return 0;
  return m;
}

}  // namespace

std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  for (auto& s : out) s = trim(s);
  return out;
}

Series read_series(const SeriesFile& file) {
  std::ifstream in(file.path);
  if (!in) throw IngestError(file.path + ": cannot open file");
  std::string line;
  // Leading '#' lines carry provenance comments; the header follows them.
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    have_header = true;
    break;
  }
  if (!have_header) throw IngestError(file.path + ": empty file (header expected)");
  const auto header = split_record(line);
  const std::size_t vi = column_index(header, file.value_column, file.path);
  const bool has_time = !file.time_column.empty();
  const std::size_t ti = has_time ? column_index(header, file.time_column, file.path) : 0;
  if (file.winter_only && !has_time) throw IngestError("winter filter needs a time column");

  Series s;
  while (std::getline(in, line)) {
    if (trim(line).empty() || line[0] == '#') continue;
    const std::size_t row = ++s.report.rows;
    const auto cells = split_record(line);
    const std::string cell = vi < cells.size() ? cells[vi] : std::string{};
    if (file.winter_only) {
      const int m = month_of(ti < cells.size() ? cells[ti] : std::string{});
      if (m == 0) throw IngestError(file.path + ": row " + std::to_string(row) + ": unreadable date");
      if (m > 3 && m < 10) {
        ++s.report.filtered;
        continue;
      }
    }
    if (is_missing(cell)) {
      if (file.missing == MissingPolicy::Fail) {
        throw IngestError(file.path + ": row " + std::to_string(row) + ": missing value");
      }
      s.report.missing_rows.push_back(row);
      continue;
    }
    double v = 0.0;
    const auto r = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (r.ec != std::errc() || r.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
      throw IngestError(file.path + ": row " + std::to_string(row) + ": '" + cell + "' is not a number");
    }
    s.values.push_back(v);
    if (has_time) s.times.push_back(ti < cells.size() ? cells[ti] : std::string{});
  }
  s.report.kept = s.values.size();
  return s;
}

}  // namespace maxarma::ingest
