#include <catch_amalgamated.hpp>

#include <cmath>

#include "maxarma/empirical.hpp"
#include "maxarma/error.hpp"
#include "maxarma/simulate.hpp"

using namespace maxarma;
using Catch::Matchers::WithinAbs;

TEST_CASE("inverted-CDF quantile", "[empirical]") {
  const std::vector<double> v{5, 1, 4, 2, 3};
  CHECK(empirical_quantile(v, 0.2) == 1);
  CHECK(empirical_quantile(v, 0.21) == 2);
  CHECK(empirical_quantile(v, 0.99) == 5);
  CHECK_THROWS(empirical_quantile(v, 1.0));
  CHECK_THROWS_AS(empirical_quantile(std::vector<double>{}, 0.5), InsufficientDataError);
  CHECK(resolve_threshold(v, ThresholdSpec::absolute(2.5)) == 2.5);
}

TEST_CASE("chi_hat on a hand-made series", "[empirical]") {
  // exceedances of 1 at t = 0,1,2,5,6 (t <= n-2 = 7 all count)
  const std::vector<double> x{2, 2, 2, 0, 0, 2, 2, 0, 0};
  const auto e = chi_hat(x, ThresholdSpec::absolute(1), 1);
  CHECK(e.exceedances == 5);
  CHECK(e.hits == 3);
  CHECK(e.value == 0.6);
  CHECK(e.ci.lo < 0.6);
  CHECK(e.ci.hi > 0.6);
  CHECK_THROWS_AS(chi_hat(x, ThresholdSpec::absolute(5), 1), InsufficientDataError);
  CHECK_THROWS(chi_hat(x, ThresholdSpec::absolute(1), 0));
}

TEST_CASE("Clopper-Pearson interval", "[empirical]") {
  const auto ci = binomial_interval(3, 10);
  CHECK_THAT(ci.lo, WithinAbs(0.06673951, 1e-7));
  CHECK_THAT(ci.hi, WithinAbs(0.65245285, 1e-7));
  CHECK(binomial_interval(0, 10).lo == 0.0);
  CHECK(binomial_interval(10, 10).hi == 1.0);
}

TEST_CASE("runs estimator", "[empirical]") {
  const std::vector<double> x{2, 2, 2, 0, 0, 2, 2, 0, 0, 0};
  const auto t1 = theta_hat_runs(x, ThresholdSpec::absolute(1), 1, {0});
  CHECK(t1.exceedances == 5);
  CHECK(t1.value == 1.0 - 3.0 / 5.0);
  // t = 2 ends a cluster only once the gap of 2 is long enough
  CHECK(theta_hat_runs(x, ThresholdSpec::absolute(1), 2, {0}).value == 1.0 - 3.0 / 5.0);
  CHECK(theta_hat_runs(x, ThresholdSpec::absolute(1), 3, {0}).value == 1.0 - 4.0 / 5.0);
  const auto t4 = theta_hat_runs(x, ThresholdSpec::absolute(1), 4, {0});
  CHECK(t4.exceedances == 4);
  CHECK(t4.value == 0.0);
  CHECK_FALSE(t4.warnings.empty());
}

TEST_CASE("runs estimator with r = 1 is the complement of chi_hat", "[empirical]") {
  const auto s = simulate({Params({2, 1}, {0.6, 0.37}, {1, 0.65}), 50000, 1000, 5});
  for (double p : {0.9, 0.95, 0.99}) {
    const auto u = ThresholdSpec::quantile(p);
    CHECK(theta_hat_runs(s.values, u, 1, {0}).value == 1.0 - chi_hat(s.values, u, 1).value);
  }
}

TEST_CASE("bootstrap interval is reproducible and brackets the estimate", "[empirical]") {
  const auto s = simulate({Params::autoregressive({0.5}), 20000, 1000, 3});
  BootstrapConfig boot{200, 17, 0.95, 1};
  const auto a = theta_hat_runs(s.values, ThresholdSpec::quantile(0.95), 1, boot);
  boot.threads = 3;
  const auto b = theta_hat_runs(s.values, ThresholdSpec::quantile(0.95), 1, boot);
  CHECK(a.ci.lo == b.ci.lo);
  CHECK(a.ci.hi == b.ci.hi);
  CHECK(a.ci.lo <= a.value);
  CHECK(a.value <= a.ci.hi);
  CHECK(a.ci.hi - a.ci.lo < 0.2);
  // roughly centred: resampling does not manufacture cluster ends
  CHECK(a.ci.lo < a.value - 0.01);
  CHECK(a.ci.hi > a.value + 0.01);
}

TEST_CASE("Davis ratios", "[empirical]") {
  const std::vector<double> x{1, 10, 5, 20, 8, 0.5};
  const auto r = davis_ratios(x, 2, 1);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == 0.4);
  CHECK(r[1] == 0.5);
  CHECK(r[2] == 4.0);
  CHECK(davis_ratio_min(x, 2, 1).ratio == 0.4);
  CHECK(davis_ratio_min(x, 2, 1).pairs == 3);
  CHECK_THROWS_AS(davis_ratio_min(x, 100, 1), InsufficientDataError);
  CHECK(davis_ratios(x, 100, 2).empty());
}

TEST_CASE("Davis min-ratio is close to the AR coefficient", "[empirical]") {
  const auto s = simulate({Params::autoregressive({0.7}), 100000, 1000, 8});
  const auto r = davis_ratio_min(s.values, empirical_quantile(s.values, 0.95), 1);
  CHECK(r.ratio >= 0.7 * (1 - 1e-12));
  CHECK_THAT(r.ratio, WithinAbs(0.7, 1e-9));
}

TEST_CASE("sample autocorrelation", "[empirical]") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  CHECK(pearson_acf(x, 0) == 1.0);
  CHECK_THAT(pearson_acf(x, 1), WithinAbs(0.4, 1e-15));
  CHECK_THROWS(pearson_acf(std::vector<double>{1, 1, 1}, 1));
}

TEST_CASE("decay change", "[empirical]") {
  std::vector<double> c;
  for (int k = 1; k <= 6; ++k) c.push_back(std::pow(0.5, k));
  for (int k = 7; k <= 20; ++k) c.push_back(c.back() * 0.95);
  const auto d = decay_change_lag(c, 20);
  CHECK(d.found);
  CHECK(d.lag == 6);
  CHECK(decay_change_lag(c, 20, {7}).lag == 7);

  std::vector<double> steady;
  for (int k = 1; k <= 20; ++k) steady.push_back(std::pow(0.5, k));
  const auto s = decay_change_lag(steady, 20);
  CHECK_FALSE(s.found);
  CHECK(s.lag == 20);
  CHECK_FALSE(s.warnings.empty());
  CHECK_THROWS(decay_change_lag(steady, 21));
}

TEST_CASE("estimate_measures bundles theta and chi at one level", "[empirical]") {
  const auto s = simulate({Params::autoregressive({0.5}), 20000, 1000, 4});
  const auto m = estimate_measures(s.values, ThresholdSpec::quantile(0.95), 3, 1, {0});
  CHECK(m.u == empirical_quantile(s.values, 0.95));
  CHECK(m.chi.size() == 3);
  CHECK(m.theta.value == 1.0 - m.chi.at(1).value);
}
