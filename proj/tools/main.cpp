// maxarma-cli: command-line front end over the C interface.
//
// Exit codes: 0 ok, 1 other failure, 2 usage, 3 ingestion, 4 marginal model,
// 5 estimation, 6 optimization.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ingest.hpp"
#include "json.hpp"
#include "maxarma/maxarma.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOther = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIngest = 3;
constexpr int kExitMarginal = 4;
constexpr int kExitEstimation = 5;
constexpr int kExitOptimization = 6;

struct Failure {
  int code;
  std::string message;
};

void check(maxarma_status s, int fallback) {
  if (s == MAXARMA_OK) return;
  const std::string stage = maxarma_last_error_stage();
  int code = fallback;
  if (s == MAXARMA_E_OPTIMIZATION || stage == "optimization") code = kExitOptimization;
  else if (stage == "marginal") code = kExitMarginal;
  else if (stage == "estimation") code = kExitEstimation;
  throw Failure{code, maxarma_last_error()};
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, r.ptr};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  maxarma_string_free(s);
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kExitOther, path + ": cannot open file"};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ParamsDeleter {
  void operator()(maxarma_params* p) const { maxarma_params_free(p); }
};
struct MarginalDeleter {
  void operator()(maxarma_marginal* m) const { maxarma_marginal_free(m); }
};
using ParamsPtr = std::unique_ptr<maxarma_params, ParamsDeleter>;
using MarginalPtr = std::unique_ptr<maxarma_marginal, MarginalDeleter>;

// Destination for one artifact: a file, or stdout when the path is empty.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw Failure{kExitOther, path + ": cannot write"};
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// Expands "--config file.json" into ordinary options placed right after the
// subcommand name. Keys also given on the command line are skipped, so
// explicit options win.
// The file is an object {"option": value}; arrays become comma lists and
// booleans toggle flags.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      continue;
    }
    Json j;
    try {
      j = Json::parse(read_text(path));
    } catch (const Json::exception& e) {
      throw Failure{kExitUsage, path + ": " + e.what()};
    }
    if (!j.is_object()) throw Failure{kExitUsage, path + ": config must be a JSON object"};
    auto text = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    std::vector<std::string> explicit_names;
    for (const auto& a : args) {
      if (a.rfind("--", 0) == 0) explicit_names.push_back(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
    }
    std::vector<std::string> extra;
    for (const auto& [key, value] : j.items()) {
      if (std::find(explicit_names.begin(), explicit_names.end(), key) != explicit_names.end()) continue;
      if (value.is_boolean()) {
        if (value.get<bool>()) extra.push_back("--" + key);
        continue;
      }
      extra.push_back("--" + key);
      if (value.is_array()) {
        std::string joined;
        for (const auto& v : value) joined += (joined.empty() ? "" : ",") + text(v);
        extra.push_back(joined);
      } else {
        extra.push_back(text(value));
      }
    }
    args.insert(args.begin() + (args.empty() ? 0 : 1), extra.begin(), extra.end());
    break;
  }
  return args;
}

// Every option of the subcommand with its effective value.
Json echo(const CLI::App& app) {
  Json j = Json::object();
  j["command"] = app.get_name();
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config") continue;
    if (opt->count() > 0) {
      const auto& r = opt->results();
      j[name] = r.size() == 1 ? Json(r.front()) : Json(r);
    } else {
      j[name] = opt->get_default_str();
    }
  }
  j["library_version"] = maxarma_version();
  return j;
}

void csv_header(std::ostream& os, const CLI::App& app) { os << "# config: " << echo(app).dump() << "\n"; }

maxarma_threshold quantile(double p) { return {MAXARMA_THRESHOLD_QUANTILE, p}; }

// ---- shared option groups ------------------------------------------------

struct ParamsInput {
  std::string file;
  std::vector<double> alpha, beta;

  void add(CLI::App* app) {
    app->add_option("--params", file, "Parameter JSON {p,q,alpha,beta}")->check(CLI::ExistingFile);
    app->add_option("--alpha", alpha, "AR coefficients a_1..a_p")->delimiter(',');
    app->add_option("--beta", beta, "MA coefficients b_1..b_q")->delimiter(',');
  }

  ParamsPtr load() const {
    maxarma_params* h = nullptr;
    if (!file.empty()) {
      check(maxarma_params_from_json(read_text(file).c_str(), &h), kExitOther);
    } else {
      if (alpha.empty()) throw Failure{kExitUsage, "either --params or --alpha is required"};
      check(maxarma_params_create(static_cast<int>(alpha.size()), static_cast<int>(beta.size()),
                                  alpha.data(), beta.data(), &h),
            kExitOther);
    }
    ParamsPtr p(h);
    int ok = 0;
    char* report = nullptr;
    check(maxarma_params_check_process(p.get(), &ok, &report), kExitOther);
    if (!ok) throw Failure{kExitOther, "parameters do not define a stationary process: " + take(report)};
    take(report);
    check(maxarma_params_validate(p.get(), &ok, &report), kExitOther);
    const std::string r = take(report);
    // Outside the identifiable region is fine for forward computations.
    if (!ok) std::cerr << "warning: parameters are not identifiable: " << r << "\n";
    return p;
  }
};

struct SeriesInput {
  std::string path, column = "value", time_column, missing = "drop";
  bool winter = false;

  void add(CLI::App* app) {
    app->add_option("--in", path, "Input CSV with a header row")->required()->check(CLI::ExistingFile);
    app->add_option("--column", column, "Value column")->capture_default_str();
    app->add_option("--time-column", time_column, "Date/time column");
    app->add_option("--missing", missing, "Missing-value policy")
        ->check(CLI::IsMember({"drop", "fail"}))
        ->capture_default_str();
    app->add_flag("--winter", winter, "Keep October-March rows only (needs --time-column)");
  }

  maxarma::ingest::Series load() const {
    maxarma::ingest::SeriesFile f;
    f.path = path;
    f.value_column = column;
    f.time_column = time_column;
    f.missing = missing == "fail" ? maxarma::ingest::MissingPolicy::Fail : maxarma::ingest::MissingPolicy::Drop;
    f.winter_only = winter;
    try {
      auto s = maxarma::ingest::read_series(f);
      if (!s.report.missing_rows.empty()) {
        std::cerr << path << ": dropped " << s.report.missing_rows.size() << " missing value(s)\n";
      }
      return s;
    } catch (const maxarma::ingest::IngestError& e) {
      throw Failure{kExitIngest, e.what()};
    }
  }
};

Json report_json(const maxarma::ingest::IngestReport& r) {
  return {{"rows", r.rows}, {"kept", r.kept}, {"filtered", r.filtered}, {"missing_rows", r.missing_rows}};
}

struct FitInput {
  std::size_t starts = 20;
  std::uint64_t seed = 20240229;
  double omega = 0.0;
  unsigned threads = 0;
  std::size_t max_evaluations = 5000;

  void add(CLI::App* app) {
    app->add_option("--starts", starts, "Multistart count")->capture_default_str();
    app->add_option("--seed", seed, "Optimizer seed")->capture_default_str();
    app->add_option("--omega", omega, "Moment weight in (0,1]; default (p+q+2)/(2p+q+2)");
    app->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
    app->add_option("--max-evaluations", max_evaluations, "Simplex budget per start")->capture_default_str();
  }

  maxarma_fit_options options() const {
    maxarma_fit_options o;
    maxarma_fit_options_default(&o);
    o.starts = starts;
    o.seed = seed;
    o.omega = omega;
    o.threads = threads;
    o.max_evaluations = max_evaluations;
    return o;
  }
};

MarginalPtr load_marginal(const std::string& model_path) {
  Json j;
  try {
    j = Json::parse(read_text(model_path));
  } catch (const Json::exception& e) {
    throw Failure{kExitMarginal, model_path + ": " + e.what()};
  }
  if (!j.contains("sample_path") || !j.contains("u_M") || !j.contains("c") || !j.contains("d")) {
    throw Failure{kExitMarginal, model_path + ": not a marginal model file"};
  }
  SeriesInput sample;
  sample.path = j["sample_path"].get<std::string>();
  if (j.contains("value_column")) sample.column = j["value_column"].get<std::string>();
  const auto s = sample.load();
  maxarma_marginal* h = nullptr;
  check(maxarma_marginal_from_parts(s.values.data(), s.values.size(), j["u_M"].get<double>(),
                                    j["c"].get<double>(), j["d"].get<double>(), &h),
        kExitMarginal);
  return MarginalPtr(h);
}

MarginalPtr fit_marginal(const std::vector<double>& y, double q) {
  maxarma_marginal* h = nullptr;
  check(maxarma_marginal_fit(y.data(), y.size(), quantile(q), &h), kExitMarginal);
  return MarginalPtr(h);
}

void write_marginal(const maxarma_marginal* m, const std::string& out, const SeriesInput& in,
                    const CLI::App& app) {
  if (out.empty()) return;
  Json j = Json::parse(take([&] {
    char* s = nullptr;
    const std::string path = std::filesystem::absolute(in.path).string();
    check(maxarma_marginal_to_json(m, path.c_str(), in.column.c_str(), &s), kExitMarginal);
    return s;
  }()));
  j["config"] = echo(app);
  Sink(out).os() << j.dump(2) << "\n";
}

std::vector<double> to_frechet(const maxarma_marginal* m, const std::vector<double>& y) {
  std::vector<double> x(y.size());
  check(maxarma_marginal_to_frechet(m, y.data(), y.size(), x.data()), kExitMarginal);
  return x;
}

// T from the decay-change rule on the Frechet-scale series.
int suggest_T(const std::vector<double>& x, double u, int min_T) {
  char* s = nullptr;
  check(maxarma_estimate_json(x.data(), x.size(), quantile(u), 50, 1, 0, 0, min_T, &s), kExitEstimation);
  const Json j = Json::parse(take(s));
  return std::max(min_T, j["T_suggestion"]["lag"].get<int>());
}

std::pair<int, int> parse_order(const std::string& text) {
  int p = -1, q = -1;
  char comma = 0;
  std::istringstream ss(text);
  if (!(ss >> p >> comma >> q) || comma != ',' || p < 1 || q < 0) {
    throw Failure{kExitUsage, "--order expects p,q with p >= 1 and q >= 0"};
  }
  return {p, q};
}

void write_moment_csv(const std::string& path, const Json& fit, const CLI::App& app) {
  if (path.empty()) return;
  Sink sink(path);
  auto& os = sink.os();
  csv_header(os, app);
  os << "moment,lag,empirical,model,squared_error\n";
  for (const auto& m : fit["breakdown"]["moment_table"]) {
    os << m["name"].get<std::string>() << "," << m["lag"].get<int>() << "," << num(m["empirical"].get<double>())
       << "," << num(m["model"].get<double>()) << "," << num(m["squared_error"].get<double>()) << "\n";
  }
}

// ---- subcommands ---------------------------------------------------------

void run_simulate(const CLI::App& app, const ParamsInput& pin, std::size_t n, std::size_t burn_in,
                  std::uint64_t seed, bool innovations, bool gumbel, const std::string& out) {
  const ParamsPtr p = pin.load();
  std::vector<double> x(n), z(innovations ? n : 0);
  check(maxarma_simulate(p.get(), n, burn_in, seed, x.data(), innovations ? z.data() : nullptr), kExitOther);
  Sink sink(out);
  auto& os = sink.os();
  csv_header(os, app);
  os << "t,x" << (gumbel ? ",log_x" : "") << (innovations ? ",z" : "") << "\n";
  for (std::size_t t = 0; t < n; ++t) {
    os << t + 1 << "," << num(x[t]);
    if (gumbel) os << "," << num(std::log(x[t]));
    if (innovations) os << "," << num(z[t]);
    os << "\n";
  }
}

void run_weights(const CLI::App& app, const ParamsInput& pin, int N, const std::string& out,
                 const std::string& summary) {
  const ParamsPtr p = pin.load();
  std::vector<double> g(static_cast<std::size_t>(N) + 1);
  check(maxarma_gamma_tau(p.get(), N, g.data()), kExitOther);
  double scale = 0.0, diag = std::nan("");
  int adaptive = 0;
  check(maxarma_stationarity_scale(p.get(), N, &scale), kExitOther);
  // The tail bound needs N >= 2p; below that it is reported as null.
  const bool have_diag = maxarma_truncation_diagnostic(p.get(), N, &diag) == MAXARMA_OK;
  check(maxarma_adaptive_truncation(p.get(), 1e-6, &adaptive), kExitOther);
  {
    Sink sink(out);
    csv_header(sink.os(), app);
    sink.os() << "tau,gamma_tau\n";
    for (int t = 0; t <= N; ++t) sink.os() << t << "," << num(g[static_cast<std::size_t>(t)]) << "\n";
  }
  if (!summary.empty()) {
    Json j = {{"config", echo(app)}, {"N", N}, {"gamma", scale},
              {"truncation_diagnostic", have_diag ? Json(diag) : Json(nullptr)}, {"adaptive_N", adaptive}};
    if (diag > 1e-6) j["warning"] = "truncation diagnostic exceeds 1e-6; consider N >= " + std::to_string(adaptive);
    Sink(summary).os() << j.dump(2) << "\n";
  }
  if (diag > 1e-6) std::cerr << "warning: truncation diagnostic " << num(diag) << " at N=" << N << "\n";
}

void run_measures(const CLI::App& app, const ParamsInput& pin, int N, int kappa_max, std::size_t mc_length,
                  double u, std::uint64_t seed, const std::string& out, const std::string& summary) {
  const ParamsPtr p = pin.load();
  double theta = 0.0, scale = 0.0;
  check(maxarma_extremal_index(p.get(), N, &theta), kExitOther);
  check(maxarma_stationarity_scale(p.get(), N, &scale), kExitOther);
  std::vector<int> kappas;
  for (int k = 1; k <= kappa_max; ++k) kappas.push_back(k);
  std::vector<double> chi_u(kappas.size());
  double theta_u = std::nan("");
  if (mc_length > 0) {
    check(maxarma_model_measures(p.get(), quantile(u), kappas.data(), kappas.size(), mc_length, seed,
                                 &theta_u, chi_u.data()),
          kExitEstimation);
  }
  {
    Sink sink(out);
    auto& os = sink.os();
    csv_header(os, app);
    os << "kappa,chi,chi_shortcut" << (mc_length > 0 ? ",chi_u" : "") << "\n";
    for (std::size_t i = 0; i < kappas.size(); ++i) {
      double c = 0.0, s = 0.0;
      check(maxarma_chi(p.get(), N, kappas[i], &c), kExitOther);
      const bool shortcut = maxarma_chi_monotone_shortcut(p.get(), N, kappas[i], &s) == MAXARMA_OK;
      os << kappas[i] << "," << num(c) << "," << (shortcut ? num(s) : "");
      if (mc_length > 0) os << "," << num(chi_u[i]);
      os << "\n";
    }
  }
  if (!summary.empty()) {
    Json j = {{"config", echo(app)}, {"gamma", scale}, {"theta", theta}};
    if (mc_length > 0) j["theta_u"] = theta_u;
    Sink(summary).os() << j.dump(2) << "\n";
  }
}

void run_estimate(const CLI::App& app, const SeriesInput& in, double u, int kappa_max, int run_length,
                  std::size_t resamples, std::uint64_t seed, int min_T, const std::string& out,
                  const std::string& summary) {
  const auto s = in.load();
  char* text = nullptr;
  check(maxarma_estimate_json(s.values.data(), s.values.size(), quantile(u), kappa_max, run_length, resamples,
                              seed, min_T, &text),
        kExitEstimation);
  Json j = Json::parse(take(text));
  {
    Sink sink(out);
    auto& os = sink.os();
    csv_header(os, app);
    os << "kappa,chi_hat,ci_lo,ci_hi\n";
    for (const auto& c : j["chi"]) {
      os << c["kappa"].get<int>() << "," << num(c["value"].get<double>()) << "," << num(c["ci"][0].get<double>())
         << "," << num(c["ci"][1].get<double>()) << "\n";
    }
  }
  Json sum = {{"config", echo(app)},
              {"u", j["u"]},
              {"theta_hat", j["theta"]},
              {"T_suggestion", j["T_suggestion"]},
              {"ingest", report_json(s.report)}};
  if (!summary.empty() || !out.empty()) Sink(summary).os() << sum.dump(2) << "\n";
}

void run_transform(const CLI::App& app, const SeriesInput& in, const std::string& direction, double u_M,
                   const std::string& model_path, const std::string& model_out, const std::string& out) {
  const auto s = in.load();
  MarginalPtr m;
  if (!model_path.empty()) {
    m = load_marginal(model_path);
  } else {
    if (direction != "to-frechet") throw Failure{kExitUsage, "from-frechet needs --model"};
    if (!(u_M > 0.0)) throw Failure{kExitUsage, "either --model or --u-quantile is required"};
    m = fit_marginal(s.values, u_M);
  }
  write_marginal(m.get(), model_out, in, app);
  std::vector<double> y(s.values.size());
  if (direction == "to-frechet") {
    check(maxarma_marginal_to_frechet(m.get(), s.values.data(), s.values.size(), y.data()), kExitMarginal);
  } else {
    check(maxarma_marginal_from_frechet(m.get(), s.values.data(), s.values.size(), y.data()), kExitMarginal);
  }
  Sink sink(out);
  auto& os = sink.os();
  csv_header(os, app);
  os << "index,value,transformed\n";
  for (std::size_t i = 0; i < y.size(); ++i) os << i + 1 << "," << num(s.values[i]) << "," << num(y[i]) << "\n";
}

struct FitCommand {
  SeriesInput in;
  FitInput fit;
  bool frechet = false;
  double marginal_q = 0.0;
  double u = 0.95;
  int T = 0;
  std::string order, out, moments, model_out;
  std::size_t qq_replicates = 0;
};

void run_fit(const CLI::App& app, const FitCommand& c) {
  if (!c.frechet && !(c.marginal_q > 0.0)) {
    throw Failure{kExitUsage, "fit needs --marginal-quantile (raw data) or --frechet"};
  }
  const auto [p, q] = parse_order(c.order);
  if (c.T > 0 && c.T < p + q) {
    throw Failure{kExitUsage, "--T " + std::to_string(c.T) + " is below p+q = " + std::to_string(p + q)};
  }
  const auto s = c.in.load();
  const maxarma_fit_options opts = c.fit.options();
  Json result;
  if (c.frechet) {
    const int T = c.T > 0 ? c.T : suggest_T(s.values, c.u, p + q);
    char* text = nullptr;
    check(maxarma_fit_json(s.values.data(), s.values.size(), p, q, quantile(c.u), T, &opts, &text),
          kExitEstimation);
    result = Json::parse(take(text));
  } else {
    const maxarma_threshold mq = quantile(c.marginal_q);
    const int orders[2] = {p, q};
    char* text = nullptr;
    check(maxarma_pipeline_fit_json(s.values.data(), s.values.size(), &mq, quantile(c.u), c.T, orders, 1, &opts,
                                    c.qq_replicates, &text, nullptr),
          kExitEstimation);
    Json pipe = Json::parse(take(text));
    const Json& cell = pipe["cells"][0];
    if (!cell["ok"].get<bool>()) throw Failure{kExitOptimization, cell["error"].get<std::string>()};
    result = cell["fit"];
    result["marginal"] = pipe["marginal"];
    result["T_suggestion"] = pipe["T_suggestion"];
    if (c.qq_replicates > 0) result["qq"] = pipe["qq"];
    if (!c.model_out.empty()) {
      const MarginalPtr m = fit_marginal(s.values, c.marginal_q);
      write_marginal(m.get(), c.model_out, c.in, app);
    }
  }
  result["config"] = echo(app);
  result["ingest"] = report_json(s.report);
  Sink(c.out).os() << result.dump(2) << "\n";
  write_moment_csv(c.moments, result, app);
}

struct ScanCommand {
  SeriesInput in;
  FitInput fit;
  bool frechet = false;
  double marginal_q = 0.0;
  double u = 0.95;
  int T = 0, p_max = 3, q_max = 4;
  std::size_t mc_length = 0;
  std::uint64_t mc_seed = 20240229;
  std::vector<int> kappas;
  std::string out, grid;
};

void run_order_scan(const CLI::App& app, const ScanCommand& c) {
  if (!c.frechet && !(c.marginal_q > 0.0)) {
    throw Failure{kExitUsage, "order-scan needs --marginal-quantile (raw data) or --frechet"};
  }
  if (c.p_max < 1 || c.q_max < 0) throw Failure{kExitUsage, "--p-max must be >= 1 and --q-max >= 0"};
  const auto s = c.in.load();
  std::vector<double> x = s.values;
  if (!c.frechet) {
    const MarginalPtr m = fit_marginal(s.values, c.marginal_q);
    x = to_frechet(m.get(), s.values);
  }
  std::vector<int> ps, qs;
  for (int p = 1; p <= c.p_max; ++p) ps.push_back(p);
  for (int q = 0; q <= c.q_max; ++q) qs.push_back(q);
  const int T = c.T > 0 ? c.T : suggest_T(x, c.u, c.p_max + c.q_max);
  const maxarma_fit_options opts = c.fit.options();
  char* text = nullptr;
  check(maxarma_order_scan_json(x.data(), x.size(), ps.data(), ps.size(), qs.data(), qs.size(), quantile(c.u), T,
                                &opts, c.mc_length, c.mc_seed, c.kappas.data(), c.kappas.size(), &text),
        kExitEstimation);
  Json cells = Json::parse(take(text));
  Json result = {{"config", echo(app)}, {"T", T}, {"cells", cells}, {"ingest", report_json(s.report)}};
  Sink(c.out).os() << result.dump(2) << "\n";
  if (c.grid.empty()) return;
  Sink sink(c.grid);
  auto& os = sink.os();
  csv_header(os, app);
  os << "p,q,ok,objective,alpha,beta\n";
  for (const auto& cell : cells) {
    os << cell["order"]["p"].get<int>() << "," << cell["order"]["q"].get<int>() << ","
       << (cell["ok"].get<bool>() ? 1 : 0) << ",";
    if (cell["ok"].get<bool>()) {
      const Json& f = cell["fit"];
      auto join = [](const Json& a) {
        std::string r;
        for (const auto& v : a) r += (r.empty() ? "" : " ") + num(v.get<double>());
        return r;
      };
      os << num(f["objective"].get<double>()) << "," << join(f["params_hat"]["alpha"]) << ","
         << join(f["params_hat"]["beta"]);
    } else {
      os << ",,";
    }
    os << "\n";
  }
}

void run_qq(const CLI::App& app, const SeriesInput& in, double u_M, const std::string& model_path,
            std::size_t replicates, std::uint64_t seed, const std::string& out) {
  const auto s = in.load();
  MarginalPtr m;
  if (!model_path.empty()) {
    m = load_marginal(model_path);
  } else {
    if (!(u_M > 0.0)) throw Failure{kExitUsage, "either --model or --u-quantile is required"};
    m = fit_marginal(s.values, u_M);
  }
  char* text = nullptr;
  check(maxarma_marginal_qq_json(m.get(), s.values.data(), s.values.size(), replicates, seed, &text),
        kExitMarginal);
  const Json qq = Json::parse(take(text));
  Sink sink(out);
  auto& os = sink.os();
  csv_header(os, app);
  os << "i,model,empirical,lower,upper\n";
  std::size_t i = 0;
  for (const auto& pt : qq) {
    os << ++i << "," << num(pt["model"].get<double>()) << "," << num(pt["empirical"].get<double>()) << ","
       << num(pt["lower"].get<double>()) << "," << num(pt["upper"].get<double>()) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-ARMA processes: weights, simulation, estimation and fitting"};
  app.require_subcommand(1);
  std::vector<std::string> config_paths;

  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_paths, "JSON file with option values")
        ->check(CLI::ExistingFile)
        ->take_last();
    return sub;
  };

  // simulate
  ParamsInput sim_params;
  std::size_t sim_n = 0, sim_burn = 1000;
  std::uint64_t sim_seed = 20240229;
  bool sim_innov = false, sim_gumbel = false;
  std::string sim_out;
  CLI::App* sim = add("simulate", "Simulate a path on unit Frechet margins");
  sim_params.add(sim);
  sim->add_option("--n", sim_n, "Length of the retained path")->required();
  sim->add_option("--burn-in", sim_burn, "Discarded initial steps")->capture_default_str();
  sim->add_option("--seed", sim_seed, "Random seed")->capture_default_str();
  sim->add_flag("--innovations", sim_innov, "Also write the driving innovations");
  sim->add_flag("--gumbel", sim_gumbel, "Also write log x (Gumbel scale)");
  sim->add_option("--out", sim_out, "Output CSV (default stdout)");

  // weights
  ParamsInput w_params;
  int w_N = 100;
  std::string w_out, w_summary;
  CLI::App* wts = add("weights", "Weight sequence gamma_tau and stationarity scale");
  w_params.add(wts);
  wts->add_option("--N", w_N, "Truncation point")->capture_default_str();
  wts->add_option("--out", w_out, "Output CSV (default stdout)");
  wts->add_option("--summary", w_summary, "Summary JSON");

  // measures
  ParamsInput m_params;
  int m_N = 100, m_kmax = 10;
  std::size_t m_mc = 0;
  double m_u = 0.95;
  std::uint64_t m_seed = 20240229;
  std::string m_out, m_summary;
  CLI::App* meas = add("measures", "Limiting (and optionally simulated) extremal measures");
  m_params.add(meas);
  meas->add_option("--N", m_N, "Truncation point")->capture_default_str();
  meas->add_option("--kappa-max", m_kmax, "Largest chi lag")->capture_default_str();
  meas->add_option("--mc-length", m_mc, "Simulation length for sub-asymptotic measures (0 = off)")
      ->capture_default_str();
  meas->add_option("--u-quantile", m_u, "Threshold quantile for simulated measures")->capture_default_str();
  meas->add_option("--seed", m_seed, "Simulation seed")->capture_default_str();
  meas->add_option("--out", m_out, "Output CSV (default stdout)");
  meas->add_option("--summary", m_summary, "Summary JSON");

  // estimate
  SeriesInput e_in;
  double e_u = 0.95;
  int e_kmax = 100, e_run = 1, e_minT = 1;
  std::size_t e_res = 1000;
  std::uint64_t e_seed = 20240229;
  std::string e_out, e_summary;
  CLI::App* est = add("estimate", "Empirical theta and chi with intervals");
  e_in.add(est);
  est->add_option("--u-quantile", e_u, "Threshold quantile")->capture_default_str();
  est->add_option("--kappa-max", e_kmax, "Largest chi lag")->capture_default_str();
  est->add_option("--run-length", e_run, "Runs estimator r")->capture_default_str();
  est->add_option("--resamples", e_res, "Bootstrap resamples for theta")->capture_default_str();
  est->add_option("--seed", e_seed, "Bootstrap seed")->capture_default_str();
  est->add_option("--min-T", e_minT, "Smallest admissible T suggestion (usually p+q)")->capture_default_str();
  est->add_option("--out", e_out, "chi CSV (default stdout)");
  est->add_option("--summary", e_summary, "Summary JSON (default stdout when --out is set)");

  // transform
  SeriesInput t_in;
  std::string t_dir = "to-frechet", t_model, t_model_out, t_out;
  double t_u = 0.0;
  CLI::App* trf = add("transform", "Probability integral transform to/from unit Frechet");
  t_in.add(trf);
  trf->add_option("--direction", t_dir, "to-frechet or from-frechet")
      ->check(CLI::IsMember({"to-frechet", "from-frechet"}))
      ->capture_default_str();
  trf->add_option("--u-quantile", t_u, "Fit a marginal model at this quantile");
  trf->add_option("--model", t_model, "Marginal model JSON")->check(CLI::ExistingFile);
  trf->add_option("--model-out", t_model_out, "Write the fitted marginal model JSON");
  trf->add_option("--out", t_out, "Output CSV (default stdout)");

  // fit
  FitCommand f;
  CLI::App* fit = add("fit", "Fit a Max-ARMA(p,q) by extremal moments");
  f.in.add(fit);
  f.fit.add(fit);
  fit->add_option("--order", f.order, "p,q")->required();
  fit->add_flag("--frechet", f.frechet, "Input is already on unit Frechet margins");
  fit->add_option("--marginal-quantile", f.marginal_q, "Marginal threshold quantile u_M for raw data");
  fit->add_option("--u-quantile", f.u, "Moment threshold quantile")->capture_default_str();
  fit->add_option("--T", f.T, "Largest chi lag (default: decay-change suggestion)");
  fit->add_option("--qq-replicates", f.qq_replicates, "QQ tolerance replicates (0 = no QQ data)")
      ->capture_default_str();
  fit->add_option("--out", f.out, "FitResult JSON (default stdout)");
  fit->add_option("--moments", f.moments, "Moment comparison CSV");
  fit->add_option("--model-out", f.model_out, "Marginal model JSON");

  // order-scan
  ScanCommand sc;
  CLI::App* scan = add("order-scan", "Fit every (p,q) on a grid for elbow inspection");
  sc.in.add(scan);
  sc.fit.add(scan);
  scan->add_flag("--frechet", sc.frechet, "Input is already on unit Frechet margins");
  scan->add_option("--marginal-quantile", sc.marginal_q, "Marginal threshold quantile u_M for raw data");
  scan->add_option("--u-quantile", sc.u, "Moment threshold quantile")->capture_default_str();
  scan->add_option("--T", sc.T, "Largest chi lag (default: decay-change suggestion)");
  scan->add_option("--p-max", sc.p_max, "p = 1..p_max")->capture_default_str();
  scan->add_option("--q-max", sc.q_max, "q = 0..q_max")->capture_default_str();
  scan->add_option("--mc-length", sc.mc_length, "Simulation length for model-based measures (0 = off)")
      ->capture_default_str();
  scan->add_option("--mc-seed", sc.mc_seed, "Simulation seed")->capture_default_str();
  scan->add_option("--kappas", sc.kappas, "chi lags for model-based measures")->delimiter(',');
  scan->add_option("--out", sc.out, "Scan JSON (default stdout)");
  scan->add_option("--grid", sc.grid, "Elbow grid CSV");

  // qq
  SeriesInput q_in;
  double q_u = 0.0;
  std::string q_model, q_out;
  std::size_t q_rep = 1000;
  std::uint64_t q_seed = 20240229;
  CLI::App* qq = add("qq", "QQ data of the Pareto tail on the Gumbel scale");
  q_in.add(qq);
  qq->add_option("--u-quantile", q_u, "Fit a marginal model at this quantile");
  qq->add_option("--model", q_model, "Marginal model JSON")->check(CLI::ExistingFile);
  qq->add_option("--replicates", q_rep, "Tolerance-bound replicates")->capture_default_str();
  qq->add_option("--seed", q_seed, "Simulation seed")->capture_default_str();
  qq->add_option("--out", q_out, "Output CSV (default stdout)");

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const Failure& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sim) run_simulate(*sim, sim_params, sim_n, sim_burn, sim_seed, sim_innov, sim_gumbel, sim_out);
    else if (*wts) run_weights(*wts, w_params, w_N, w_out, w_summary);
    else if (*meas) run_measures(*meas, m_params, m_N, m_kmax, m_mc, m_u, m_seed, m_out, m_summary);
    else if (*est) run_estimate(*est, e_in, e_u, e_kmax, e_run, e_res, e_seed, e_minT, e_out, e_summary);
    else if (*trf) run_transform(*trf, t_in, t_dir, t_u, t_model, t_model_out, t_out);
    else if (*fit) run_fit(*fit, f);
    else if (*scan) run_order_scan(*scan, sc);
    else if (*qq) run_qq(*qq, q_in, q_u, q_model, q_rep, q_seed, q_out);
  } catch (const Failure& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return 0;
}
