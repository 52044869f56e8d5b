#include <catch_amalgamated.hpp>

#include "ingest.hpp"

using namespace maxarma::ingest;

namespace {

std::string data(const char* name) { return std::string(MAXARMA_TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("record splitting", "[ingest]") {
  CHECK(split_record("a,b,,c") == std::vector<std::string>{"a", "b", "", "c"});
  CHECK(split_record("\"x, y\",2") == std::vector<std::string>{"x, y", "2"});
  CHECK(split_record("\"say \"\"hi\"\"\",1") == std::vector<std::string>{"say \"hi\"", "1"});
  CHECK(split_record("") == std::vector<std::string>{""});
}

TEST_CASE("reads a column and drops missing values", "[ingest]") {
  const auto s = read_series({data("levels.csv"), "level, m", "date"});
  CHECK(s.values == std::vector<double>{1.5, 2.25, 3.0, 4.5, 5.0});
  CHECK(s.times.size() == 5);
  CHECK(s.times.front() == "2001-09-30");
  CHECK(s.report.rows == 8);
  CHECK(s.report.kept == 5);
  CHECK(s.report.missing_rows == std::vector<std::size_t>{3, 5, 7});
}

TEST_CASE("missing values can be fatal", "[ingest]") {
  CHECK_THROWS_AS(read_series({data("levels.csv"), "level, m", "", MissingPolicy::Fail}), IngestError);
}

TEST_CASE("winter filter keeps October to March", "[ingest]") {
  const auto s = read_series({data("levels.csv"), "level, m", "date", MissingPolicy::Drop, true});
  CHECK(s.values == std::vector<double>{2.25, 3.0, 5.0});
  CHECK(s.report.filtered == 2);
  CHECK_THROWS_AS(read_series({data("levels.csv"), "level, m", "", MissingPolicy::Drop, true}),
                  IngestError);
}

TEST_CASE("ingest errors name the problem", "[ingest]") {
  try {
    read_series({data("levels.csv"), "flow"});
    FAIL("expected an error");
  } catch (const IngestError& e) {
    const std::string what = e.what();
    CHECK(what.find("flow") != std::string::npos);
    CHECK(what.find("level, m") != std::string::npos);
  }
  CHECK_THROWS_AS(read_series({data("bad_value.csv"), "level"}), IngestError);
  CHECK_THROWS_AS(read_series({data("no_such_file.csv"), "level"}), IngestError);
}
