#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace maxarma {

enum class ThresholdKind { Quantile, Absolute };

struct ThresholdSpec {
  ThresholdKind kind = ThresholdKind::Quantile;
  double value = 0.95;  // probability in (0,1), or a level in data units

  static ThresholdSpec quantile(double prob) { return {ThresholdKind::Quantile, prob}; }
  static ThresholdSpec absolute(double level) { return {ThresholdKind::Absolute, level}; }
};

/// Inverted-CDF quantile: the order statistic x_(ceil(n p)) (1-based).
double empirical_quantile(std::span<const double> data, double prob);

/// Same, on data already sorted ascending.
double empirical_quantile_sorted(std::span<const double> sorted, double prob);

/// Level in data units. Quantile specs must have prob strictly in (0,1).
double resolve_threshold(std::span<const double> series, ThresholdSpec u);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// A proportion over threshold exceedances. Exceedances are strict (x > u).
struct ProportionEstimate {
  double value = 0.0;
  Interval ci;
  double level = 0.0;            // resolved threshold
  std::size_t exceedances = 0;   // denominator
  std::size_t hits = 0;          // numerator
  std::vector<std::string> warnings;
};

/// Clopper-Pearson interval for hits / trials.
Interval binomial_interval(std::size_t hits, std::size_t trials, double confidence = 0.95);

/// #{t : x_t > u, x_{t+k} > u} / #{t : x_t > u} over t = 1..n-k, with a
/// binomial interval. Throws InsufficientDataError on zero exceedances.
ProportionEstimate chi_hat(std::span<const double> series, ThresholdSpec u, int kappa,
                           double confidence = 0.95);

struct BootstrapConfig {
  std::size_t resamples = 1000;  // 0 skips the interval
  std::uint64_t seed = 20240229;
  double confidence = 0.95;
  unsigned threads = 0;          // 0 = hardware concurrency
};

/// Runs estimator of the extremal index: the share of exceedances (t <= n-r)
/// followed by r consecutive non-exceedances. It is computed as
/// 1 - (non-terminating exceedances) / exceedances, so with r = 1 it equals
/// 1 - chi_hat(kappa = 1) bit for bit. The interval is a percentile interval
/// from a stationary block bootstrap (mean block length 1/theta) over the
/// per-index exceedance / continuation indicators of the original series.
ProportionEstimate theta_hat_runs(std::span<const double> series, ThresholdSpec u,
                                  int run_length = 1, const BootstrapConfig& boot = {});

struct DavisRatio {
  double ratio = 0.0;
  std::size_t pairs = 0;
};

/// min of x_t / x_{t-i} over T(u,i) = {t : min(x_t, x_{t-i}) > u}.
/// Throws InsufficientDataError when T(u,i) is empty.
DavisRatio davis_ratio_min(std::span<const double> series, double u, int lag);

/// Every ratio x_t / x_{t-i} over T(u,i), sorted ascending (possibly empty).
std::vector<double> davis_ratios(std::span<const double> series, double u, int lag);

/// Lag-k sample autocorrelation. Throws on zero variance.
double pearson_acf(std::span<const double> series, int kappa);

struct DecayChangeOptions {
  int min_lag = 1;          // usually p + q
  int window = 3;           // persistence of the slower decay
  double rate_drop = 0.5;   // slower = per-lag log-decay at most this share of the earlier rate
  double min_rate = 0.05;   // earlier segment must decay at least this fast (per lag, log scale)
};

struct DecayChange {
  int lag = 0;
  bool found = false;
  std::vector<std::string> warnings;
};

/// Suggests the maximum moment lag T: the first lag after which chi decays
/// markedly slower than it did before. Decay is measured on the log scale,
/// d_k = log chi_k - log chi_{k+1}; lag k is accepted when the mean rate over
/// lags 1..k is >= min_rate and each of d_k..d_{k+window-1} is at most
/// rate_drop times that mean. curve[k-1] holds chi_k. Falls back to max_lag
/// with a warning.
DecayChange decay_change_lag(std::span<const double> chi_curve, int max_lag,
                             const DecayChangeOptions& options = {});

struct EmpiricalMeasures {
  double u = 0.0;
  ProportionEstimate theta;
  std::map<int, ProportionEstimate> chi;
};

EmpiricalMeasures estimate_measures(std::span<const double> series, ThresholdSpec u,
                                    int kappa_max, int run_length = 1,
                                    const BootstrapConfig& boot = {});

}  // namespace maxarma
