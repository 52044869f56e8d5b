// Exercises the shared library through its C interface only.
#include <catch_amalgamated.hpp>

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxarma/maxarma.h"

using Catch::Matchers::WithinAbs;
using nlohmann::json;

namespace {

struct ParamsDeleter {
  void operator()(maxarma_params* p) const { maxarma_params_free(p); }
};
struct MarginalDeleter {
  void operator()(maxarma_marginal* m) const { maxarma_marginal_free(m); }
};
using ParamsPtr = std::unique_ptr<maxarma_params, ParamsDeleter>;
using MarginalPtr = std::unique_ptr<maxarma_marginal, MarginalDeleter>;

ParamsPtr make(std::vector<double> a, std::vector<double> b = {}) {
  maxarma_params* h = nullptr;
  REQUIRE(maxarma_params_create(static_cast<int>(a.size()), static_cast<int>(b.size()), a.data(),
                                b.data(), &h) == MAXARMA_OK);
  return ParamsPtr(h);
}

json take_json(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  maxarma_string_free(s);
  return j;
}

std::vector<double> sim(const maxarma_params* p, size_t n, uint64_t seed) {
  std::vector<double> x(n);
  REQUIRE(maxarma_simulate(p, n, 1000, seed, x.data(), nullptr) == MAXARMA_OK);
  return x;
}

const maxarma_threshold kQ95{MAXARMA_THRESHOLD_QUANTILE, 0.95};

}  // namespace

TEST_CASE("version and error state", "[capi]") {
  CHECK(std::string(maxarma_version()) == "0.1.0");
  maxarma_params* h = nullptr;
  const double a = 0.5;
  CHECK(maxarma_params_create(0, 0, &a, nullptr, &h) == MAXARMA_E_INVALID_ARGUMENT);
  CHECK(h == nullptr);
  CHECK(std::string(maxarma_last_error()).find("p >= 1") != std::string::npos);
  auto ok = make({0.5});
  CHECK(std::string(maxarma_last_error()).empty());
}

TEST_CASE("params round trip through JSON", "[capi]") {
  auto p = make({0.6, 0.45}, {1.5});
  char* s = nullptr;
  REQUIRE(maxarma_params_to_json(p.get(), &s) == MAXARMA_OK);
  const json j = take_json(s);
  CHECK(j["beta"] == json::array({1.0, 1.5}));

  maxarma_params* h = nullptr;
  REQUIRE(maxarma_params_from_json(j.dump().c_str(), &h) == MAXARMA_OK);
  ParamsPtr back(h);
  int pp = 0, qq = 0;
  REQUIRE(maxarma_params_order(back.get(), &pp, &qq) == MAXARMA_OK);
  CHECK(pp == 2);
  CHECK(qq == 1);
  CHECK(maxarma_params_from_json("{oops", &h) == MAXARMA_E_PARSE);
  CHECK(maxarma_params_from_json(R"({"p":1,"q":1,"alpha":[0.5],"beta":[1,2,3]})", &h) ==
        MAXARMA_E_DIMENSION);
}

TEST_CASE("validation and reparametrisation", "[capi]") {
  auto s1 = make({0.85, 0.77, 0.7});
  int ok = 0;
  char* report = nullptr;
  REQUIRE(maxarma_params_validate(s1.get(), &ok, &report) == MAXARMA_OK);
  CHECK(ok == 1);
  CHECK(take_json(report).empty());

  double delta[3];
  REQUIRE(maxarma_params_to_reparam(s1.get(), delta, nullptr) == MAXARMA_OK);
  CHECK_THAT(delta[1], WithinAbs(0.0475, 1e-15));
  maxarma_params* h = nullptr;
  REQUIRE(maxarma_params_from_reparam(3, 0, delta, nullptr, &h) == MAXARMA_OK);
  ParamsPtr back(h);
  char* a = nullptr;
  char* b = nullptr;
  maxarma_params_to_json(s1.get(), &a);
  maxarma_params_to_json(back.get(), &b);
  CHECK(take_json(a) == take_json(b));

  auto s2 = make({0.3, 0.0, 0.1});
  REQUIRE(maxarma_params_validate(s2.get(), &ok, &report) == MAXARMA_OK);
  CHECK(ok == 0);
  CHECK(take_json(report)[0]["code"] == "alpha_floor");
  REQUIRE(maxarma_params_check_process(s2.get(), &ok, nullptr) == MAXARMA_OK);
  CHECK(ok == 1);
  CHECK(maxarma_params_to_reparam(s2.get(), delta, nullptr) == MAXARMA_E_INFEASIBLE);

  const double bad[2] = {0.9, 0.3};
  CHECK(maxarma_params_from_reparam(2, 0, bad, nullptr, &h) == MAXARMA_E_INFEASIBLE);
}

TEST_CASE("limiting measures", "[capi]") {
  auto p = make({0.85, 0.77, 0.7}, {2, 1, 0.9});
  double g = 0, theta = 0, c1 = 0;
  REQUIRE(maxarma_stationarity_scale(p.get(), 100, &g) == MAXARMA_OK);
  CHECK_THAT(g, WithinAbs(0.05415197518581437, 1e-12));
  REQUIRE(maxarma_extremal_index(p.get(), 100, &theta) == MAXARMA_OK);
  CHECK_THAT(theta, WithinAbs(0.10830395037162874, 1e-12));
  REQUIRE(maxarma_chi(p.get(), 100, 1, &c1) == MAXARMA_OK);
  CHECK_THAT(c1, WithinAbs(0.8916967613309575, 1e-12));
  std::vector<double> gt(11);
  REQUIRE(maxarma_gamma_tau(p.get(), 10, gt.data()) == MAXARMA_OK);
  CHECK(gt[1] == 2.0);
  double sc = 0;
  CHECK(maxarma_chi_monotone_shortcut(p.get(), 100, 1, &sc) == MAXARMA_E_INFEASIBLE);
  int N = 0;
  REQUIRE(maxarma_adaptive_truncation(p.get(), 1e-6, &N) == MAXARMA_OK);
  CHECK(N >= 100);
  double diag = 0;
  CHECK(maxarma_truncation_diagnostic(p.get(), 4, &diag) == MAXARMA_E_INVALID_ARGUMENT);

  auto ar = make({0.5});
  REQUIRE(maxarma_chi_monotone_shortcut(ar.get(), 100, 3, &sc) == MAXARMA_OK);
  CHECK_THAT(sc, WithinAbs(0.125, 1e-12));
}

TEST_CASE("simulation and estimators", "[capi]") {
  auto p = make({0.5});
  std::vector<double> x(20000), z(20000);
  REQUIRE(maxarma_simulate(p.get(), x.size(), 1000, 7, x.data(), z.data()) == MAXARMA_OK);
  CHECK(x == sim(p.get(), 20000, 7));
  for (size_t t = 1; t < x.size(); ++t) CHECK(x[t] == std::max(0.5 * x[t - 1], z[t]));

  maxarma_proportion th{}, c1{};
  REQUIRE(maxarma_theta_hat(x.data(), x.size(), kQ95, 1, 0, 1, &th) == MAXARMA_OK);
  REQUIRE(maxarma_chi_hat(x.data(), x.size(), kQ95, 1, &c1) == MAXARMA_OK);
  CHECK(th.value == 1.0 - c1.value);
  CHECK(th.level == c1.level);

  char* s = nullptr;
  REQUIRE(maxarma_estimate_json(x.data(), x.size(), kQ95, 5, 1, 50, 3, 1, &s) == MAXARMA_OK);
  const json j = take_json(s);
  CHECK(j["chi"].size() == 5);
  CHECK(j.contains("T_suggestion"));

  const double one = 1.0;
  CHECK(maxarma_chi_hat(&one, 1, kQ95, 1, &c1) == MAXARMA_E_INSUFFICIENT_DATA);
  CHECK(maxarma_chi_hat(nullptr, 5, kQ95, 1, &c1) == MAXARMA_E_INVALID_ARGUMENT);
}

TEST_CASE("marginal model through handles", "[capi]") {
  std::vector<double> y;
  for (int i = 1; i <= 1000; ++i) y.push_back(std::pow(1.0 - i / 1001.0, -0.5));
  maxarma_marginal* h = nullptr;
  const maxarma_threshold q90{MAXARMA_THRESHOLD_QUANTILE, 0.9};
  REQUIRE(maxarma_marginal_fit(y.data(), y.size(), q90, &h) == MAXARMA_OK);
  MarginalPtr m(h);
  double u = 0, c = 0, d = 0;
  size_t n = 0, nu = 0;
  REQUIRE(maxarma_marginal_info(m.get(), &u, &c, &d, &n, &nu) == MAXARMA_OK);
  CHECK(n == 1000);
  CHECK(nu == 100);
  CHECK_THAT(c, WithinAbs(2.0, 0.3));

  std::vector<double> x(y.size()), back(y.size());
  REQUIRE(maxarma_marginal_to_frechet(m.get(), y.data(), y.size(), x.data()) == MAXARMA_OK);
  REQUIRE(maxarma_marginal_from_frechet(m.get(), x.data(), x.size(), back.data()) == MAXARMA_OK);
  for (size_t i = 0; i < y.size(); ++i) CHECK_THAT(back[i], WithinAbs(y[i], 1e-9 * y[i]));

  maxarma_marginal* h2 = nullptr;
  REQUIRE(maxarma_marginal_from_parts(y.data(), y.size(), u, c, d, &h2) == MAXARMA_OK);
  MarginalPtr m2(h2);
  double f1 = 0, f2 = 0;
  maxarma_marginal_cdf(m.get(), &y[500], 1, &f1);
  maxarma_marginal_cdf(m2.get(), &y[500], 1, &f2);
  CHECK(f1 == f2);

  char* s = nullptr;
  REQUIRE(maxarma_marginal_to_json(m.get(), "/tmp/y.csv", "y", &s) == MAXARMA_OK);
  CHECK(take_json(s)["sample_path"] == "/tmp/y.csv");
  REQUIRE(maxarma_marginal_qq_json(m.get(), y.data(), y.size(), 20, 1, &s) == MAXARMA_OK);
  CHECK(take_json(s).size() == 100);
}

TEST_CASE("fitting entry points", "[capi]") {
  auto p = make({0.5});
  const auto x = sim(p.get(), 100000, 21);
  maxarma_fit_options opt;
  maxarma_fit_options_default(&opt);
  CHECK(opt.starts == 20);
  opt.starts = 4;

  char* s = nullptr;
  REQUIRE(maxarma_fit_json(x.data(), x.size(), 1, 0, kQ95, 5, &opt, &s) == MAXARMA_OK);
  const json f = take_json(s);
  CHECK_THAT(f["params_hat"]["alpha"][0].get<double>(), WithinAbs(0.5, 0.03));
  CHECK(maxarma_fit_json(x.data(), x.size(), 3, 3, kQ95, 5, &opt, &s) == MAXARMA_E_INVALID_ARGUMENT);

  const int ps[] = {1, 2}, qs[] = {0};
  const int ks[] = {1, 2};
  REQUIRE(maxarma_order_scan_json(x.data(), x.size(), ps, 2, qs, 1, kQ95, 5, &opt, 20000, 1, ks, 2,
                                  &s) == MAXARMA_OK);
  const json scan = take_json(s);
  REQUIRE(scan.size() == 2);
  CHECK(scan[0]["ok"] == true);
  CHECK(scan[0].contains("model_measures"));

  double theta = 0, chi[2];
  REQUIRE(maxarma_model_measures(p.get(), kQ95, ks, 2, 50000, 3, &theta, chi) == MAXARMA_OK);
  CHECK_THAT(chi[0], WithinAbs(0.5, 0.05));
}

TEST_CASE("pipeline entry point reports stages", "[capi]") {
  auto p = make({0.5});
  auto y = sim(p.get(), 30000, 22);
  for (auto& v : y) v = 50.0 * std::sqrt(v);
  const int orders[] = {1, 0};
  maxarma_fit_options opt;
  maxarma_fit_options_default(&opt);
  opt.starts = 3;
  char* s = nullptr;

  CHECK(maxarma_pipeline_fit_json(y.data(), y.size(), nullptr, kQ95, 5, orders, 1, &opt, 20, &s,
                                  nullptr) == MAXARMA_E_INVALID_ARGUMENT);
  CHECK(std::string(maxarma_last_error_stage()).empty());

  const maxarma_threshold q98{MAXARMA_THRESHOLD_QUANTILE, 0.98};
  std::vector<double> fr(y.size());
  REQUIRE(maxarma_pipeline_fit_json(y.data(), y.size(), &q98, kQ95, 5, orders, 1, &opt, 20, &s,
                                    fr.data()) == MAXARMA_OK);
  const json r = take_json(s);
  CHECK(r["T"] == 5);
  CHECK(r["cells"][0]["ok"] == true);
  CHECK(fr[0] > 0.0);

  const double tiny[] = {1, 2, 3};
  CHECK(maxarma_pipeline_fit_json(tiny, 3, &q98, kQ95, 5, orders, 1, &opt, 20, &s, nullptr) !=
        MAXARMA_OK);
  CHECK(std::string(maxarma_last_error_stage()) == "marginal");
}
