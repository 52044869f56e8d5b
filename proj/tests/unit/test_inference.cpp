#include <catch_amalgamated.hpp>

#include <cmath>

#include "maxarma/error.hpp"
#include "maxarma/extremal.hpp"
#include "maxarma/inference.hpp"
#include "maxarma/simulate.hpp"

using namespace maxarma;
using Catch::Matchers::WithinAbs;

namespace {

// Data moments equal to the limiting model moments; Davis ratios bracket alpha.
EmpiricalMoments synthetic(const Params& x, int T) {
  const WeightSequence ws(x, adaptive_truncation(x, kModelTruncationTolerance), T);
  EmpiricalMoments m;
  m.level = 20;
  m.theta = extremal_index(ws);
  m.chi = chi_curve(ws, T);
  for (double a : x.alpha) m.ratios.push_back({a, a + 0.5, 2.0});
  m.exceedances = 1000;
  return m;
}

}  // namespace

TEST_CASE("moment lag grid", "[inference]") {
  const auto u = ThresholdSpec::quantile(0.95);
  CHECK(build_moment_spec({1, 0}, u, 14).lags == std::vector<int>{1, 14});
  CHECK(build_moment_spec({1, 1}, u, 14).lags == std::vector<int>{1, 7, 14});
  CHECK(build_moment_spec({3, 0}, u, 14).lags == std::vector<int>{1, 4, 9, 14});
  const auto s = build_moment_spec({2, 2}, u, 4);
  CHECK(s.lags == std::vector<int>{1, 2, 3, 4});
  CHECK(s.warnings.size() == 1);
  CHECK(s.divisor() == 6);
  CHECK_THROWS(build_moment_spec({2, 2}, u, 3));
  CHECK_THROWS(build_moment_spec({1, 0}, u, 5, 0.0));
  CHECK_THROWS(build_moment_spec({1, 0}, u, 5, 1.5));
  CHECK(build_moment_spec({1, 0}, u, 5, 1.0).omega == 1.0);
}

TEST_CASE("default weight", "[inference]") {
  CHECK(default_omega({3, 0}) == 5.0 / 8.0);
  CHECK(default_omega({2, 1}) == 5.0 / 7.0);
  CHECK(build_moment_spec({2, 1}, {}, 14).omega == default_omega({2, 1}));
}

TEST_CASE("objective vanishes at matching moments", "[inference]") {
  const Params x = Params::autoregressive({0.85, 0.77, 0.7});
  const auto spec = build_moment_spec({3, 0}, ThresholdSpec::quantile(0.95), 14);
  const auto data = synthetic(x, 14);
  const auto b = objective_breakdown(x, spec, data);
  CHECK_THAT(b.value, WithinAbs(0.0, 1e-24));
  REQUIRE(b.moments.size() == 5);
  CHECK(b.moments[0].name == "theta");
  CHECK(b.moments[4].name == "chi_14");
  REQUIRE(b.ratios.size() == 3);
  CHECK(b.ratios[1].min_ratio == 0.77);
  CHECK(objective(to_reparam(x), spec, data) == b.value);
}

TEST_CASE("objective terms follow the weighting", "[inference]") {
  const Params truth = Params::autoregressive({0.5});
  const Params other = Params::autoregressive({0.6});
  const auto spec = build_moment_spec({1, 0}, {}, 3, 0.25);
  const auto data = synthetic(truth, 3);
  const auto b = objective_breakdown(other, spec, data);
  // theta: 0.5 vs 0.4; chi_1: 0.5 vs 0.6; chi_3: 0.125 vs 0.216
  const double moments =
      std::pow(0.1, 2) + std::pow(0.1, 2) + std::pow(0.216 - 0.125, 2);
  CHECK_THAT(b.moment_term, WithinAbs(0.25 / 3 * moments, 1e-12));
  // nearest ratio to 0.6 is 0.5 (not the minimum ratio)
  CHECK_THAT(b.ratio_term, WithinAbs(0.75 * 0.01, 1e-15));
  CHECK_THAT(b.value, WithinAbs(b.moment_term + b.ratio_term, 1e-18));
}

TEST_CASE("lags without extreme pairs drop from the ratio term", "[inference]") {
  const Params x = Params::autoregressive({0.5, 0.3});
  const auto spec = build_moment_spec({2, 0}, {}, 4);
  auto data = synthetic(x, 4);
  data.ratios[1].clear();
  const auto b = objective_breakdown(x, spec, data);
  CHECK_FALSE(b.ratios[1].used);
  CHECK(std::isnan(b.ratios[1].min_ratio));
  CHECK(b.warnings.size() == 1);
}

TEST_CASE("objective rejects points outside the parameter space", "[inference]") {
  const auto spec = build_moment_spec({2, 0}, {}, 4);
  const auto data = synthetic(Params::autoregressive({0.5, 0.3}), 4);
  CHECK(std::isinf(objective(ReparamParams({2, 0}, {0.5, -0.01}, {}), spec, data)));
  CHECK(std::isinf(objective(ReparamParams({2, 0}, {0.9, 0.5}, {}), spec, data)));
  CHECK(std::isfinite(objective(ReparamParams({2, 0}, {0.5, 0.01}, {}), spec, data)));
}

TEST_CASE("fit on synthetic moments", "[inference]") {
  const Params x({2, 1}, {0.6, 0.45}, {1, 1.5});
  const auto spec = build_moment_spec({2, 1}, {}, 9);
  const auto data = synthetic(x, 9);
  FitOptions opt;
  opt.starts = 8;
  const auto r = fit(data, spec, opt);
  CHECK(r.objective < 1e-8);
  CHECK_THAT(r.params_hat.alpha[0], WithinAbs(0.6, 1e-3));
  CHECK_THAT(r.params_hat.alpha[1], WithinAbs(0.45, 1e-3));
  CHECK_THAT(r.params_hat.beta[1], WithinAbs(1.5, 1e-2));
  CHECK(r.starts.size() == 8);
  CHECK(is_admissible(r.params_hat));
}

TEST_CASE("fit is deterministic and thread-count independent", "[inference]") {
  const auto s = simulate({Params::autoregressive({0.5}), 100000, 1000, 12});
  const auto spec = build_moment_spec({1, 0}, ThresholdSpec::quantile(0.95), 5);
  FitOptions opt;
  opt.starts = 6;
  opt.threads = 1;
  const auto a = fit(s.values, spec, opt);
  opt.threads = 3;
  const auto b = fit(s.values, spec, opt);
  CHECK(a.params_hat == b.params_hat);
  CHECK(a.objective == b.objective);
  CHECK_THAT(a.params_hat.alpha[0], WithinAbs(0.5, 0.03));
}

TEST_CASE("empirical moments validate coverage", "[inference]") {
  const auto s = simulate({Params::autoregressive({0.5}), 5000, 1000, 1});
  const auto m = compute_empirical_moments(s.values, ThresholdSpec::quantile(0.95), 5, 2);
  CHECK(m.chi.size() == 5);
  CHECK(m.ratios.size() == 2);
  CHECK(m.theta == 1.0 - m.chi[0]);
  const auto spec = build_moment_spec({1, 0}, {}, 7);
  CHECK_THROWS(objective_breakdown(Params::autoregressive({0.5}), spec, m));
  CHECK_THROWS_AS(compute_empirical_moments(std::vector<double>(10, 1.0),
                                            ThresholdSpec::absolute(2), 1, 1),
                  InsufficientDataError);
}

TEST_CASE("model-based measures approach the limits at high levels", "[inference]") {
  const std::vector<int> k{1, 2};
  const auto m = model_based_measures(Params::autoregressive({0.5}), ThresholdSpec::quantile(0.99), k,
                                      200000, 3);
  CHECK_THAT(m.chi.at(1), WithinAbs(0.5, 0.03));
  CHECK_THAT(m.chi.at(2), WithinAbs(0.25, 0.03));
  CHECK_THAT(m.theta, WithinAbs(0.5, 0.03));
}

TEST_CASE("order scan records failures and continues", "[inference]") {
  const auto s = simulate({Params::autoregressive({0.5}), 50000, 1000, 2});
  const std::vector<int> ps{1, 2}, qs{0, 3};
  OrderScanOptions opt;
  opt.T = 4;
  opt.fit.starts = 3;
  const auto cells = order_scan(s.values, ps, qs, opt);
  REQUIRE(cells.size() == 4);
  CHECK(cells[0].ok);
  CHECK(cells[0].order == Order{1, 0});
  CHECK(cells[1].ok);  // (1,3): p+q = 4 = T
  CHECK(cells[2].ok);
  CHECK_FALSE(cells[3].ok);  // (2,3): T below p+q
  CHECK_FALSE(cells[3].error.empty());
  CHECK_FALSE(cells[3].fit.has_value());
}
