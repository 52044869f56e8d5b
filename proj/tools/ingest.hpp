#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxarma::ingest {

enum class MissingPolicy { Drop, Fail };

struct SeriesFile {
  std::string path;
  std::string value_column;
  std::string time_column;  // optional; required by the winter filter
  MissingPolicy missing = MissingPolicy::Drop;
  bool winter_only = false;  // keep October..March (month read from an ISO date)
};

struct IngestReport {
  std::size_t rows = 0;                  // data rows read
  std::size_t kept = 0;
  std::size_t filtered = 0;              // removed by the season filter
  std::vector<std::size_t> missing_rows; // 1-based data row numbers
};

struct Series {
  std::vector<double> values;
  std::vector<std::string> times;  // parallel to values when a time column is set
  IngestReport report;
};

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads one numeric column of a headed CSV file, line by line. Lines
/// starting with '#' are comments and skipped. Empty cells
/// and NA/NaN tokens are missing; anything else that is not a finite number
/// is an error.
Series read_series(const SeriesFile& file);

/// Splits one CSV record; double quotes group and "" escapes a quote.
std::vector<std::string> split_record(const std::string& line);

}  // namespace maxarma::ingest
