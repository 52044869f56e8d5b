/*
 * C interface to the Max-ARMA library.
 *
 * Conventions:
 *  - Every fallible call returns a maxarma_status; on failure a message is
 *    available from maxarma_last_error() (thread local, valid until the next
 *    call on the same thread).
 *  - Objects are opaque handles released with their *_free function.
 *  - Strings returned through char** are heap allocated; release them with
 *    maxarma_string_free().
 *  - Output arrays are caller allocated; the required length is documented
 *    per function.
 *  - beta arrays hold b_1..b_q; the unit weight b_0 is implicit.
 */
#ifndef MAXARMA_MAXARMA_H
#define MAXARMA_MAXARMA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MAXARMA_BUILDING_LIBRARY)
#    define MAXARMA_API __declspec(dllexport)
#  else
#    define MAXARMA_API __declspec(dllimport)
#  endif
#else
#  define MAXARMA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum maxarma_status {
  MAXARMA_OK = 0,
  MAXARMA_E_INVALID_ARGUMENT = 1,
  MAXARMA_E_DIMENSION = 2,
  MAXARMA_E_INFEASIBLE = 3,
  MAXARMA_E_INSUFFICIENT_DATA = 4,
  MAXARMA_E_PARSE = 5,
  MAXARMA_E_IO = 6,
  MAXARMA_E_OPTIMIZATION = 7,
  MAXARMA_E_INTERNAL = 99
} maxarma_status;

typedef enum maxarma_threshold_kind {
  MAXARMA_THRESHOLD_QUANTILE = 0, /* value is a probability in (0,1) */
  MAXARMA_THRESHOLD_LEVEL = 1     /* value is in data units */
} maxarma_threshold_kind;

typedef struct maxarma_threshold {
  maxarma_threshold_kind kind;
  double value;
} maxarma_threshold;

typedef struct maxarma_params maxarma_params;
typedef struct maxarma_marginal maxarma_marginal;

MAXARMA_API const char* maxarma_version(void);
MAXARMA_API const char* maxarma_last_error(void);
/* Pipeline stage of the last failure ("marginal", "estimation",
 * "optimization"), or "" when not applicable. */
MAXARMA_API const char* maxarma_last_error_stage(void);
MAXARMA_API void maxarma_string_free(char* s);

/* ---- parameters ------------------------------------------------------- */

MAXARMA_API maxarma_status maxarma_params_create(int p, int q, const double* alpha,
                                                 const double* beta, maxarma_params** out);
MAXARMA_API maxarma_status maxarma_params_from_json(const char* json, maxarma_params** out);
MAXARMA_API maxarma_status maxarma_params_to_json(const maxarma_params* params, char** out);
MAXARMA_API void maxarma_params_free(maxarma_params* params);
MAXARMA_API maxarma_status maxarma_params_order(const maxarma_params* params, int* p, int* q);

/* *admissible = 1 when the report is empty. report_json may be NULL. */
MAXARMA_API maxarma_status maxarma_params_validate(const maxarma_params* params, int* admissible,
                                                   char** report_json);
/* Well-defined stationary process (no identifiability floors); enough for
 * simulation and the limiting measures. */
MAXARMA_API maxarma_status maxarma_params_check_process(const maxarma_params* params, int* ok,
                                                        char** report_json);
/* delta: p entries, epsilon: q entries. */
MAXARMA_API maxarma_status maxarma_params_to_reparam(const maxarma_params* params, double* delta,
                                                     double* epsilon);
MAXARMA_API maxarma_status maxarma_params_from_reparam(int p, int q, const double* delta,
                                                       const double* epsilon, maxarma_params** out);

/* ---- weights and limiting measures ------------------------------------ */

/* out: N+1 entries gamma_0..gamma_N. */
MAXARMA_API maxarma_status maxarma_gamma_tau(const maxarma_params* params, int N, double* out);
MAXARMA_API maxarma_status maxarma_stationarity_scale(const maxarma_params* params, int N,
                                                      double* out);
MAXARMA_API maxarma_status maxarma_truncation_diagnostic(const maxarma_params* params, int N,
                                                         double* out);
MAXARMA_API maxarma_status maxarma_adaptive_truncation(const maxarma_params* params, double tol,
                                                       int* out);
MAXARMA_API maxarma_status maxarma_extremal_index(const maxarma_params* params, int N, double* out);
MAXARMA_API maxarma_status maxarma_chi(const maxarma_params* params, int N, int kappa, double* out);
MAXARMA_API maxarma_status maxarma_chi_monotone_shortcut(const maxarma_params* params, int N,
                                                         int kappa, double* out);

/* ---- simulation ------------------------------------------------------- */

/* values: n entries; innovations: n entries or NULL. */
MAXARMA_API maxarma_status maxarma_simulate(const maxarma_params* params, size_t n, size_t burn_in,
                                            uint64_t seed, double* values, double* innovations);

/* ---- empirical estimators --------------------------------------------- */

typedef struct maxarma_proportion {
  double value;
  double ci_lo;
  double ci_hi;
  double level; /* resolved threshold */
  size_t exceedances;
  size_t hits;
} maxarma_proportion;

MAXARMA_API maxarma_status maxarma_chi_hat(const double* x, size_t n, maxarma_threshold u,
                                           int kappa, maxarma_proportion* out);
/* resamples = 0 skips the bootstrap interval (ci = [0,1]). */
MAXARMA_API maxarma_status maxarma_theta_hat(const double* x, size_t n, maxarma_threshold u,
                                             int run_length, size_t resamples, uint64_t seed,
                                             maxarma_proportion* out);
/* theta, chi_1..chi_kappa_max with intervals, and a suggested T from lags
 * 1..kappa_max, as JSON. */
MAXARMA_API maxarma_status maxarma_estimate_json(const double* x, size_t n, maxarma_threshold u,
                                                 int kappa_max, int run_length, size_t resamples,
                                                 uint64_t seed, int min_T, char** out);

/* ---- marginal model --------------------------------------------------- */

MAXARMA_API maxarma_status maxarma_marginal_fit(const double* y, size_t n, maxarma_threshold u_M,
                                                maxarma_marginal** out);
MAXARMA_API maxarma_status maxarma_marginal_from_parts(const double* sample, size_t n, double u_M,
                                                       double c, double d, maxarma_marginal** out);
MAXARMA_API void maxarma_marginal_free(maxarma_marginal* model);
MAXARMA_API maxarma_status maxarma_marginal_info(const maxarma_marginal* model, double* u_M,
                                                 double* c, double* d, size_t* n, size_t* n_u);
MAXARMA_API maxarma_status maxarma_marginal_to_json(const maxarma_marginal* model,
                                                    const char* sample_path,
                                                    const char* value_column, char** out);
/* Elementwise over n values; out has n entries. */
MAXARMA_API maxarma_status maxarma_marginal_cdf(const maxarma_marginal* model, const double* y,
                                                size_t n, double* out);
MAXARMA_API maxarma_status maxarma_marginal_to_frechet(const maxarma_marginal* model,
                                                       const double* y, size_t n, double* out);
MAXARMA_API maxarma_status maxarma_marginal_from_frechet(const maxarma_marginal* model,
                                                         const double* x, size_t n, double* out);
MAXARMA_API maxarma_status maxarma_marginal_qq_json(const maxarma_marginal* model, const double* y,
                                                    size_t n, size_t replicates, uint64_t seed,
                                                    char** out);

/* ---- fitting ---------------------------------------------------------- */

typedef struct maxarma_fit_options {
  size_t starts;
  uint64_t seed;
  double omega; /* <= 0 selects (p+q+2)/(2p+q+2) */
  unsigned threads; /* 0 = hardware concurrency */
  size_t max_evaluations;
  int max_restarts;
  double x_tolerance;
  double f_tolerance;
} maxarma_fit_options;

MAXARMA_API void maxarma_fit_options_default(maxarma_fit_options* options);

/* x is on unit Frechet margins. options may be NULL for defaults. */
MAXARMA_API maxarma_status maxarma_fit_json(const double* x, size_t n, int p, int q,
                                            maxarma_threshold u, int T,
                                            const maxarma_fit_options* options, char** out);
/* mc_length = 0 skips the model-based measures. */
MAXARMA_API maxarma_status maxarma_order_scan_json(const double* x, size_t n, const int* p_values,
                                                   size_t n_p, const int* q_values, size_t n_q,
                                                   maxarma_threshold u, int T,
                                                   const maxarma_fit_options* options,
                                                   size_t mc_length, uint64_t mc_seed,
                                                   const int* kappas, size_t n_kappas, char** out);
/* End-to-end on raw data. marginal may not be NULL (the call fails before
 * any computation otherwise). T <= 0 uses the decay-change suggestion.
 * orders: n_orders (p,q) pairs interleaved. frechet_out: n entries or NULL. */
MAXARMA_API maxarma_status maxarma_pipeline_fit_json(const double* y, size_t n,
                                                     const maxarma_threshold* marginal,
                                                     maxarma_threshold u, int T,
                                                     const int* orders, size_t n_orders,
                                                     const maxarma_fit_options* options,
                                                     size_t qq_replicates, char** out,
                                                     double* frechet_out);
/* chi: n_kappas entries. */
MAXARMA_API maxarma_status maxarma_model_measures(const maxarma_params* params, maxarma_threshold u,
                                                  const int* kappas, size_t n_kappas,
                                                  size_t mc_length, uint64_t seed, double* theta,
                                                  double* chi);

#ifdef __cplusplus
}
#endif

#endif /* MAXARMA_MAXARMA_H */
