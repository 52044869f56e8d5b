#include "maxarma/maxarma.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "maxarma/empirical.hpp"
#include "maxarma/error.hpp"
#include "maxarma/extremal.hpp"
#include "maxarma/inference.hpp"
#include "maxarma/margins.hpp"
#include "maxarma/params.hpp"
#include "maxarma/pipeline.hpp"
#include "maxarma/serialize.hpp"
#include "maxarma/simulate.hpp"
#include "maxarma/weights.hpp"

struct maxarma_params {
  maxarma::Params value;
};

struct maxarma_marginal {
  maxarma::MarginalModel value;
};

namespace {

using namespace maxarma;

thread_local std::string g_error;
thread_local std::string g_stage;

maxarma_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return MAXARMA_E_INVALID_ARGUMENT;
    case ErrorKind::Dimension: return MAXARMA_E_DIMENSION;
    case ErrorKind::Infeasible: return MAXARMA_E_INFEASIBLE;
    case ErrorKind::InsufficientData: return MAXARMA_E_INSUFFICIENT_DATA;
    case ErrorKind::Parse: return MAXARMA_E_PARSE;
    case ErrorKind::Io: return MAXARMA_E_IO;
    case ErrorKind::Optimization: return MAXARMA_E_OPTIMIZATION;
  }
  return MAXARMA_E_INTERNAL;
}

template <class Fn>
maxarma_status guard(Fn&& fn) noexcept {
  g_error.clear();
  g_stage.clear();
  try {
    fn();
    return MAXARMA_OK;
  } catch (const StageError& e) {
    g_error = e.what();
    g_stage = e.stage();
    return status_of(e.kind());
  } catch (const Error& e) {
    g_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
  } catch (const std::exception& e) {
    g_error = e.what();
  } catch (...) {
    g_error = "unknown error";
  }
  return MAXARMA_E_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw invalid_argument(what);
}

void emit(const Json& j, char** out) {
  require(out != nullptr, "output pointer is null");
  const std::string s = j.dump();
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, s.c_str(), s.size() + 1);
  *out = buf;
}

std::span<const double> series(const double* x, size_t n) {
  require(x != nullptr || n == 0, "data pointer is null");
  return {x, n};
}

ThresholdSpec spec_of(maxarma_threshold u) {
  switch (u.kind) {
    case MAXARMA_THRESHOLD_QUANTILE: return ThresholdSpec::quantile(u.value);
    case MAXARMA_THRESHOLD_LEVEL: return ThresholdSpec::absolute(u.value);
  }
  throw invalid_argument("unknown threshold kind");
}

const Params& params_of(const maxarma_params* p) {
  require(p != nullptr, "params handle is null");
  return p->value;
}

const MarginalModel& model_of(const maxarma_marginal* m) {
  require(m != nullptr, "marginal handle is null");
  return m->value;
}

Params make_params(int p, int q, const double* alpha, const double* beta) {
  require(p >= 1 && q >= 0, "require p >= 1 and q >= 0");
  require(alpha != nullptr && (q == 0 || beta != nullptr), "coefficient pointer is null");
  std::vector<double> b{1.0};
  b.insert(b.end(), beta, beta + q);
  return Params({p, q}, {alpha, alpha + p}, std::move(b));
}

FitOptions fit_options(const maxarma_fit_options* o) {
  maxarma_fit_options d;
  maxarma_fit_options_default(&d);
  if (!o) o = &d;
  FitOptions f;
  f.starts = o->starts;
  f.seed = o->seed;
  f.threads = o->threads;
  f.simplex.max_evaluations = o->max_evaluations;
  f.simplex.max_restarts = o->max_restarts;
  f.simplex.x_tolerance = o->x_tolerance;
  f.simplex.f_tolerance = o->f_tolerance;
  return f;
}

std::optional<double> omega_of(const maxarma_fit_options* o) {
  if (o && o->omega > 0.0) return o->omega;
  return std::nullopt;
}

void fill(const ProportionEstimate& e, maxarma_proportion* out) {
  out->value = e.value;
  out->ci_lo = e.ci.lo;
  out->ci_hi = e.ci.hi;
  out->level = e.level;
  out->exceedances = e.exceedances;
  out->hits = e.hits;
}

}  // namespace

extern "C" {

const char* maxarma_version(void) { return "0.1.0"; }
const char* maxarma_last_error(void) { return g_error.c_str(); }
const char* maxarma_last_error_stage(void) { return g_stage.c_str(); }
void maxarma_string_free(char* s) { std::free(s); }

maxarma_status maxarma_params_create(int p, int q, const double* alpha, const double* beta,
                                     maxarma_params** out) {
  return guard([&] {
    require(out != nullptr, "output pointer is null");
    *out = new maxarma_params{make_params(p, q, alpha, beta)};
  });
}

maxarma_status maxarma_params_from_json(const char* json, maxarma_params** out) {
  return guard([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new maxarma_params{params_from_json(parse_json(json))};
  });
}

maxarma_status maxarma_params_to_json(const maxarma_params* params, char** out) {
  return guard([&] { emit(to_json(params_of(params)), out); });
}

void maxarma_params_free(maxarma_params* params) { delete params; }

maxarma_status maxarma_params_order(const maxarma_params* params, int* p, int* q) {
  return guard([&] {
    require(p && q, "null argument");
    *p = params_of(params).p();
    *q = params_of(params).q();
  });
}

maxarma_status maxarma_params_validate(const maxarma_params* params, int* admissible,
                                       char** report_json) {
  return guard([&] {
    require(admissible != nullptr, "null argument");
    const auto report = validate_theta(params_of(params));
    *admissible = report.empty() ? 1 : 0;
    if (report_json) emit(to_json(report), report_json);
  });
}

maxarma_status maxarma_params_check_process(const maxarma_params* params, int* ok,
                                            char** report_json) {
  return guard([&] {
    require(ok != nullptr, "null argument");
    const auto report = validate_process(params_of(params));
    *ok = report.empty() ? 1 : 0;
    if (report_json) emit(to_json(report), report_json);
  });
}

maxarma_status maxarma_params_to_reparam(const maxarma_params* params, double* delta,
                                         double* epsilon) {
  return guard([&] {
    const ReparamParams rp = to_reparam(params_of(params));
    require(delta && (rp.epsilon.empty() || epsilon), "null argument");
    std::copy(rp.delta.begin(), rp.delta.end(), delta);
    std::copy(rp.epsilon.begin(), rp.epsilon.end(), epsilon);
  });
}

maxarma_status maxarma_params_from_reparam(int p, int q, const double* delta,
                                           const double* epsilon, maxarma_params** out) {
  return guard([&] {
    require(p >= 1 && q >= 0, "require p >= 1 and q >= 0");
    require(delta && (q == 0 || epsilon) && out, "null argument");
    ReparamParams rp({p, q}, {delta, delta + p}, {epsilon, epsilon + q});
    *out = new maxarma_params{from_reparam(rp)};
  });
}

maxarma_status maxarma_gamma_tau(const maxarma_params* params, int N, double* out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    const auto g = gamma_tau_dp(params_of(params), N);
    std::copy(g.begin(), g.end(), out);
  });
}

maxarma_status maxarma_stationarity_scale(const maxarma_params* params, int N, double* out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    *out = stationarity_scale(params_of(params), N);
  });
}

maxarma_status maxarma_truncation_diagnostic(const maxarma_params* params, int N, double* out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    *out = truncation_diagnostic(params_of(params), N);
  });
}

maxarma_status maxarma_adaptive_truncation(const maxarma_params* params, double tol, int* out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    *out = adaptive_truncation(params_of(params), tol);
  });
}

maxarma_status maxarma_extremal_index(const maxarma_params* params, int N, double* out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    *out = extremal_index(WeightSequence(params_of(params), N));
  });
}

maxarma_status maxarma_chi(const maxarma_params* params, int N, int kappa, double* out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    *out = chi(WeightSequence(params_of(params), N), kappa);
  });
}

maxarma_status maxarma_chi_monotone_shortcut(const maxarma_params* params, int N, int kappa,
                                             double* out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    *out = chi_monotone_shortcut(WeightSequence(params_of(params), N), kappa);
  });
}

maxarma_status maxarma_simulate(const maxarma_params* params, size_t n, size_t burn_in,
                                uint64_t seed, double* values, double* innovations) {
  return guard([&] {
    require(values != nullptr || n == 0, "null argument");
    SimulationConfig cfg;
    cfg.params = params_of(params);
    cfg.n = n;
    cfg.burn_in = burn_in;
    cfg.seed = seed;
    cfg.keep_innovations = innovations != nullptr;
    const SimulatedSeries s = simulate(cfg);
    std::copy(s.values.begin(), s.values.end(), values);
    if (innovations) std::copy(s.innovations.begin(), s.innovations.end(), innovations);
  });
}

maxarma_status maxarma_chi_hat(const double* x, size_t n, maxarma_threshold u, int kappa,
                               maxarma_proportion* out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    fill(chi_hat(series(x, n), spec_of(u), kappa), out);
  });
}

maxarma_status maxarma_theta_hat(const double* x, size_t n, maxarma_threshold u, int run_length,
                                 size_t resamples, uint64_t seed, maxarma_proportion* out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    BootstrapConfig boot;
    boot.resamples = resamples;
    boot.seed = seed;
    fill(theta_hat_runs(series(x, n), spec_of(u), run_length, boot), out);
  });
}

maxarma_status maxarma_estimate_json(const double* x, size_t n, maxarma_threshold u,
                                     int kappa_max, int run_length, size_t resamples,
                                     uint64_t seed, int min_T, char** out) {
  return guard([&] {
    require(kappa_max >= 1, "kappa_max must be >= 1");
    BootstrapConfig boot;
    boot.resamples = resamples;
    boot.seed = seed;
    const EmpiricalMeasures m = estimate_measures(series(x, n), spec_of(u), kappa_max, run_length, boot);
    std::vector<double> curve;
    for (const auto& [k, e] : m.chi) curve.push_back(e.value);
    DecayChangeOptions dco;
    dco.min_lag = std::max(1, min_T);
    Json j = to_json(m);
    j["T_suggestion"] = to_json(decay_change_lag(curve, kappa_max, dco));
    emit(j, out);
  });
}

maxarma_status maxarma_marginal_fit(const double* y, size_t n, maxarma_threshold u_M,
                                    maxarma_marginal** out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    *out = new maxarma_marginal{MarginalModel::fit(series(y, n), spec_of(u_M))};
  });
}

maxarma_status maxarma_marginal_from_parts(const double* sample, size_t n, double u_M, double c,
                                           double d, maxarma_marginal** out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    const auto s = series(sample, n);
    *out = new maxarma_marginal{MarginalModel::from_parts({s.begin(), s.end()}, u_M, c, d)};
  });
}

void maxarma_marginal_free(maxarma_marginal* model) { delete model; }

maxarma_status maxarma_marginal_info(const maxarma_marginal* model, double* u_M, double* c,
                                     double* d, size_t* n, size_t* n_u) {
  return guard([&] {
    const MarginalModel& m = model_of(model);
    if (u_M) *u_M = m.threshold();
    if (c) *c = m.tail_index();
    if (d) *d = m.tail_fraction();
    if (n) *n = m.size();
    if (n_u) *n_u = m.exceedances();
  });
}

maxarma_status maxarma_marginal_to_json(const maxarma_marginal* model, const char* sample_path,
                                        const char* value_column, char** out) {
  return guard([&] {
    emit(to_json(model_of(model), sample_path ? sample_path : "", value_column ? value_column : ""),
         out);
  });
}

maxarma_status maxarma_marginal_cdf(const maxarma_marginal* model, const double* y, size_t n,
                                    double* out) {
  return guard([&] {
    const MarginalModel& m = model_of(model);
    require(out != nullptr || n == 0, "null argument");
    const auto s = series(y, n);
    for (size_t i = 0; i < n; ++i) out[i] = m.cdf(s[i]);
  });
}

maxarma_status maxarma_marginal_to_frechet(const maxarma_marginal* model, const double* y,
                                           size_t n, double* out) {
  return guard([&] {
    const MarginalModel& m = model_of(model);
    require(out != nullptr || n == 0, "null argument");
    const auto s = series(y, n);
    for (size_t i = 0; i < n; ++i) out[i] = m.to_frechet(s[i]);
  });
}

maxarma_status maxarma_marginal_from_frechet(const maxarma_marginal* model, const double* x,
                                             size_t n, double* out) {
  return guard([&] {
    const MarginalModel& m = model_of(model);
    require(out != nullptr || n == 0, "null argument");
    const auto s = series(x, n);
    for (size_t i = 0; i < n; ++i) out[i] = m.from_frechet(s[i]);
  });
}

maxarma_status maxarma_marginal_qq_json(const maxarma_marginal* model, const double* y, size_t n,
                                        size_t replicates, uint64_t seed, char** out) {
  return guard([&] {
    QqOptions opt;
    opt.replicates = replicates;
    opt.seed = seed;
    emit(to_json(qq_data(model_of(model), series(y, n), opt)), out);
  });
}

void maxarma_fit_options_default(maxarma_fit_options* options) {
  if (!options) return;
  const FitOptions f;
  options->starts = f.starts;
  options->seed = f.seed;
  options->omega = 0.0;
  options->threads = f.threads;
  options->max_evaluations = f.simplex.max_evaluations;
  options->max_restarts = f.simplex.max_restarts;
  options->x_tolerance = f.simplex.x_tolerance;
  options->f_tolerance = f.simplex.f_tolerance;
}

maxarma_status maxarma_fit_json(const double* x, size_t n, int p, int q, maxarma_threshold u,
                                int T, const maxarma_fit_options* options, char** out) {
  return guard([&] {
    const MomentSpec spec = build_moment_spec({p, q}, spec_of(u), T, omega_of(options));
    emit(to_json(fit(series(x, n), spec, fit_options(options))), out);
  });
}

maxarma_status maxarma_order_scan_json(const double* x, size_t n, const int* p_values, size_t n_p,
                                       const int* q_values, size_t n_q, maxarma_threshold u, int T,
                                       const maxarma_fit_options* options, size_t mc_length,
                                       uint64_t mc_seed, const int* kappas, size_t n_kappas,
                                       char** out) {
  return guard([&] {
    require(p_values && q_values, "null argument");
    require(kappas != nullptr || n_kappas == 0, "null argument");
    OrderScanOptions o;
    o.u = spec_of(u);
    o.T = T;
    o.omega = omega_of(options);
    o.fit = fit_options(options);
    o.mc_length = mc_length;
    o.mc_seed = mc_seed;
    o.kappas.assign(kappas, kappas + n_kappas);
    const std::vector<int> ps(p_values, p_values + n_p), qs(q_values, q_values + n_q);
    emit(to_json(order_scan(series(x, n), ps, qs, o)), out);
  });
}

maxarma_status maxarma_pipeline_fit_json(const double* y, size_t n, const maxarma_threshold* marginal,
                                         maxarma_threshold u, int T, const int* orders,
                                         size_t n_orders, const maxarma_fit_options* options,
                                         size_t qq_replicates, char** out, double* frechet_out) {
  return guard([&] {
    PipelineConfig cfg;
    if (marginal) cfg.marginal_threshold = spec_of(*marginal);
    cfg.u = spec_of(u);
    if (T > 0) cfg.T = T;
    require(orders != nullptr || n_orders == 0, "null argument");
    for (size_t i = 0; i < n_orders; ++i) cfg.orders.push_back({orders[2 * i], orders[2 * i + 1]});
    cfg.omega = omega_of(options);
    cfg.fit = fit_options(options);
    cfg.qq.replicates = qq_replicates;
    cfg.qq.seed = cfg.fit.seed;
    const PipelineResult r = pipeline_fit(series(y, n), cfg);
    emit(to_json(r), out);
    if (frechet_out) std::copy(r.frechet.begin(), r.frechet.end(), frechet_out);
  });
}

maxarma_status maxarma_model_measures(const maxarma_params* params, maxarma_threshold u,
                                      const int* kappas, size_t n_kappas, size_t mc_length,
                                      uint64_t seed, double* theta, double* chi) {
  return guard([&] {
    require(theta != nullptr && (n_kappas == 0 || (kappas && chi)), "null argument");
    const std::vector<int> ks(kappas, kappas + n_kappas);
    const ModelMeasures m = model_based_measures(params_of(params), spec_of(u), ks, mc_length, seed);
    *theta = m.theta;
    for (size_t i = 0; i < n_kappas; ++i) chi[i] = m.chi.at(ks[i]);
  });
}

}  // extern "C"
