#include <catch_amalgamated.hpp>

#include "maxarma/error.hpp"
#include "maxarma/serialize.hpp"

using namespace maxarma;

TEST_CASE("params JSON carries the unit innovation weight", "[serialize]") {
  const Params x({2, 1}, {0.6, 0.45}, {1, 1.5});
  const Json j = to_json(x);
  CHECK(j.at("beta") == Json::array({1.0, 1.5}));
  CHECK(params_from_json(j) == x);
  CHECK(params_from_json(parse_json(j.dump())) == x);
}

TEST_CASE("params JSON accepts beta without the leading one", "[serialize]") {
  const auto x = params_from_json(parse_json(R"({"p":1,"q":1,"alpha":[0.5],"beta":[0.8]})"));
  CHECK(x.beta == std::vector<double>{1.0, 0.8});
  const auto ar = params_from_json(parse_json(R"({"p":1,"q":0,"alpha":[0.5]})"));
  CHECK(ar.beta == std::vector<double>{1.0});
}

TEST_CASE("params JSON errors", "[serialize]") {
  CHECK_THROWS_AS(params_from_json(parse_json(R"({"p":1,"alpha":[0.5]})")), Error);
  CHECK_THROWS_AS(params_from_json(parse_json(R"({"p":1,"q":1,"alpha":[0.5],"beta":[2,0.8]})")),
                  DimensionError);
  CHECK_THROWS_AS(params_from_json(parse_json(R"({"p":"a","q":0,"alpha":[0.5]})")), Error);
  try {
    parse_json("{not json");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
  }
}

TEST_CASE("doubles survive a text round trip", "[serialize]") {
  const Params x = Params::autoregressive({0.1 + 0.2, 1.0 / 3.0});
  CHECK(params_from_json(parse_json(to_json(x).dump())) == x);
}

TEST_CASE("thresholds", "[serialize]") {
  const auto q = threshold_from_json(parse_json(R"({"quantile":0.98})"));
  CHECK(q.kind == ThresholdKind::Quantile);
  CHECK(q.value == 0.98);
  const auto l = threshold_from_json(to_json(ThresholdSpec::absolute(270.4)));
  CHECK(l.kind == ThresholdKind::Absolute);
  CHECK(l.value == 270.4);
  CHECK_THROWS(threshold_from_json(parse_json("3")));
}

TEST_CASE("marginal model file", "[serialize]") {
  const std::vector<double> y{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto m = MarginalModel::fit(y, 7.5);
  const Json j = to_json(m, "/data/y.csv", "level");
  const auto f = marginal_file_from_json(parse_json(j.dump()));
  CHECK(f.u_M == 7.5);
  CHECK(f.c == m.tail_index());
  CHECK(f.d == m.tail_fraction());
  CHECK(f.n == 10);
  CHECK(f.n_u == 3);
  CHECK(f.sample_path == "/data/y.csv");
  CHECK(f.value_column == "level");
  const auto rebuilt = MarginalModel::from_parts(y, f.u_M, f.c, f.d);
  CHECK(rebuilt.to_frechet(4.2) == m.to_frechet(4.2));
}

TEST_CASE("NaN is written as null", "[serialize]") {
  ObjectiveBreakdown b;
  b.ratios.push_back({1, 0, std::numeric_limits<double>::quiet_NaN(), 0.5, 0.0, false});
  const Json j = to_json(b);
  CHECK(j.at("ratio_table")[0].at("min_ratio").is_null());
}

TEST_CASE("reparam and violations", "[serialize]") {
  const Json r = to_json(to_reparam(Params::autoregressive({0.5, 0.3})));
  CHECK(r.at("delta").size() == 2);
  const Json v = to_json(validate_theta(Params::autoregressive({1.5})));
  CHECK(v[0].at("code") == "alpha_upper");
  CHECK(v[0].at("index") == 1);
}
