#include <catch_amalgamated.hpp>

#include <cmath>

#include "maxarma/error.hpp"
#include "maxarma/pipeline.hpp"
#include "maxarma/simulate.hpp"

using namespace maxarma;
using Catch::Matchers::WithinAbs;

namespace {

// AR(1) on unit Frechet, pushed to a Pareto(4)-like raw scale.
std::vector<double> raw_series(std::size_t n, std::uint64_t seed) {
  auto s = simulate({Params::autoregressive({0.5}), n, 1000, seed}).values;
  for (auto& v : s) v = 100.0 * std::pow(v, 0.25);
  return s;
}

PipelineConfig base_config() {
  PipelineConfig c;
  c.marginal_threshold = ThresholdSpec::quantile(0.9);
  c.orders = {{1, 0}};
  c.T = 5;
  c.fit.starts = 4;
  c.qq.replicates = 50;
  return c;
}

}  // namespace

TEST_CASE("configuration is checked before any computation", "[pipeline]") {
  const std::vector<double> empty;
  auto c = base_config();
  c.marginal_threshold.reset();
  try {
    pipeline_fit(empty, c);
    FAIL("expected an error");
  } catch (const StageError&) {
    FAIL("configuration error must not be a stage error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
  c = base_config();
  c.orders.clear();
  CHECK_THROWS_AS(pipeline_fit(empty, c), Error);
}

TEST_CASE("stage failures are labelled", "[pipeline]") {
  const std::vector<double> tiny{1, 2, 3};
  try {
    pipeline_fit(tiny, base_config());
    FAIL("expected an error");
  } catch (const StageError& e) {
    CHECK(e.stage() == "marginal");
  }
}

TEST_CASE("end to end on a raw series", "[pipeline]") {
  const auto y = raw_series(100000, 6);
  auto c = base_config();
  c.orders = {{1, 0}, {3, 3}};
  const auto r = pipeline_fit(y, c);
  REQUIRE(r.marginal);
  CHECK_THAT(r.marginal->tail_index(), WithinAbs(4.0, 0.3));
  CHECK(r.frechet.size() == y.size());
  CHECK(r.T == 5);
  REQUIRE(r.cells.size() == 2);
  REQUIRE(r.cells[0].ok);
  CHECK_THAT(r.cells[0].fit->params_hat.alpha[0], WithinAbs(0.5, 0.05));
  CHECK_FALSE(r.cells[1].ok);
  CHECK(r.cells[1].error.rfind("optimization: ", 0) == 0);
}

TEST_CASE("T defaults to the decay-change suggestion", "[pipeline]") {
  const auto y = raw_series(50000, 7);
  auto c = base_config();
  c.T.reset();
  c.T_search_max = 20;
  const auto r = pipeline_fit(y, c);
  CHECK(r.T >= 1);
  CHECK(r.T <= 20);
  CHECK(r.T == std::max(r.T_suggestion.lag, 1));
}
