#include "maxarma/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/beta.hpp>

#include "maxarma/error.hpp"
#include "maxarma/rng.hpp"
#include "parallel.hpp"

namespace maxarma {

double empirical_quantile_sorted(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw InsufficientDataError("quantile of an empty sample", 0);
  if (!(prob > 0.0 && prob < 1.0)) throw invalid_argument("quantile probability must lie in (0,1)");
  const auto n = static_cast<double>(sorted.size());
  auto k = static_cast<std::size_t>(std::ceil(n * prob));
  k = std::clamp<std::size_t>(k, 1, sorted.size());
  return sorted[k - 1];
}

double empirical_quantile(std::span<const double> data, double prob) {
  std::vector<double> s(data.begin(), data.end());
  if (s.empty()) throw InsufficientDataError("quantile of an empty sample", 0);
  if (!(prob > 0.0 && prob < 1.0)) throw invalid_argument("quantile probability must lie in (0,1)");
  const auto n = static_cast<double>(s.size());
  auto k = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(n * prob)), 1, s.size());
  std::nth_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k - 1), s.end());
  return s[k - 1];
}

double resolve_threshold(std::span<const double> series, ThresholdSpec u) {
  if (u.kind == ThresholdKind::Absolute) {
    if (!std::isfinite(u.value)) throw invalid_argument("threshold level must be finite");
    return u.value;
  }
  return empirical_quantile(series, u.value);
}

Interval binomial_interval(std::size_t hits, std::size_t trials, double confidence) {
  if (trials == 0) throw InsufficientDataError("binomial interval with zero trials", 0);
  if (hits > trials) throw invalid_argument("binomial interval: hits exceed trials");
  const double a = 1.0 - confidence;
  using boost::math::beta_distribution;
  Interval ci;
  const auto k = static_cast<double>(hits);
  const auto n = static_cast<double>(trials);
  ci.lo = hits == 0 ? 0.0 : quantile(beta_distribution<>(k, n - k + 1.0), a / 2.0);
  ci.hi = hits == trials ? 1.0 : quantile(beta_distribution<>(k + 1.0, n - k), 1.0 - a / 2.0);
  return ci;
}

ProportionEstimate chi_hat(std::span<const double> series, ThresholdSpec spec, int kappa,
                           double confidence) {
  if (kappa < 1) throw invalid_argument("chi_hat: kappa must be >= 1");
  const std::size_t n = series.size();
  const auto k = static_cast<std::size_t>(kappa);
  if (n <= k) throw InsufficientDataError("chi_hat: series not longer than the lag", n);
  const double u = resolve_threshold(series, spec);

  std::size_t exceed = 0;
  std::size_t joint = 0;
  for (std::size_t t = 0; t + k < n; ++t) {
    if (series[t] > u) {
      ++exceed;
      if (series[t + k] > u) ++joint;
    }
  }
  if (exceed == 0) throw InsufficientDataError("chi_hat: insufficient exceedances", exceed);

  ProportionEstimate e;
  e.level = u;
  e.exceedances = exceed;
  e.hits = joint;
  e.value = static_cast<double>(joint) / static_cast<double>(exceed);
  e.ci = binomial_interval(joint, exceed, confidence);
  return e;
}

namespace {

struct RunCounts {
  std::size_t exceed = 0;
  std::size_t continuing = 0;  // exceedances with another exceedance within r steps
};

// ind[t] != 0 marks an exceedance; considers t = 0 .. n-r-1.
RunCounts count_runs(std::span<const unsigned char> ind, std::size_t r) {
  RunCounts c;
  const std::size_t n = ind.size();
  if (n <= r) return c;
  // Distance from t to the next exceedance strictly after t, tracked backwards.
  std::size_t next = std::numeric_limits<std::size_t>::max();
  for (std::size_t t = n; t-- > 0;) {
    if (t + r < n && ind[t]) {
      ++c.exceed;
      if (next != std::numeric_limits<std::size_t>::max() && next - t <= r) ++c.continuing;
    }
    if (ind[t]) next = t;
  }
  return c;
}

double runs_estimate(const RunCounts& c) {
  return 1.0 - static_cast<double>(c.continuing) / static_cast<double>(c.exceed);
}

double percentile_sorted(const std::vector<double>& s, double prob) {
  // Linear interpolation between order statistics (type 7).
  const double h = (static_cast<double>(s.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

}  // namespace

ProportionEstimate theta_hat_runs(std::span<const double> series, ThresholdSpec spec,
                                  int run_length, const BootstrapConfig& boot) {
  if (run_length < 1) throw invalid_argument("theta_hat_runs: run length must be >= 1");
  const std::size_t n = series.size();
  const auto r = static_cast<std::size_t>(run_length);
  if (n <= r) throw InsufficientDataError("theta_hat_runs: series not longer than run length", n);
  const double u = resolve_threshold(series, spec);

  std::vector<unsigned char> ind(n);
  for (std::size_t t = 0; t < n; ++t) ind[t] = series[t] > u ? 1 : 0;
  const RunCounts c = count_runs(ind, r);
  if (c.exceed == 0) throw InsufficientDataError("theta_hat_runs: insufficient exceedances", 0);

  ProportionEstimate e;
  e.level = u;
  e.exceedances = c.exceed;
  e.hits = c.exceed - c.continuing;
  e.value = runs_estimate(c);
  e.ci = {e.value, e.value};
  if (e.value == 0.0) {
    e.warnings.emplace_back("degenerate cluster: no exceedance is followed by a run of " +
                            std::to_string(r) + " non-exceedances");
  }
  if (boot.resamples == 0) return e;

  // Stationary (circular) block bootstrap with geometric block lengths of
  // mean 1/theta. Blocks carry the per-index pairs (exceedance, continuing)
  // computed on the original series, so block junctions never cut a cluster.
  const std::size_t m = n - r;
  std::vector<unsigned char> cont(m, 0);
  {
    std::size_t next = std::numeric_limits<std::size_t>::max();
    for (std::size_t t = n; t-- > 0;) {
      if (t < m && ind[t] && next != std::numeric_limits<std::size_t>::max() && next - t <= r) cont[t] = 1;
      if (ind[t]) next = t;
    }
  }
  const double mean_block =
      std::clamp(1.0 / std::max(e.value, 1.0 / static_cast<double>(m)), 1.0,
                 static_cast<double>(m));
  const double log_stay = mean_block > 1.0 ? std::log(1.0 - 1.0 / mean_block) : 0.0;

  std::vector<double> stats(boot.resamples, std::numeric_limits<double>::quiet_NaN());
  detail::parallel_for(boot.resamples, boot.threads, [&](std::size_t b) {
    Rng rng = Rng::derive(boot.seed, b);
    std::size_t filled = 0, exceed = 0, continuing = 0;
    while (filled < m) {
      std::size_t t = rng.below(m);
      std::size_t len = 1;
      if (log_stay < 0.0) len += static_cast<std::size_t>(std::floor(std::log(rng.uniform()) / log_stay));
      len = std::min(len, m - filled);
      filled += len;
      for (; len > 0; --len, t = t + 1 == m ? 0 : t + 1) {
        exceed += ind[t];
        continuing += cont[t];
      }
    }
    if (exceed > 0) stats[b] = runs_estimate({exceed, continuing});
  });

  std::erase_if(stats, [](double v) { return std::isnan(v); });
  if (stats.empty()) {
    e.warnings.emplace_back("bootstrap: no resample contained an exceedance");
    return e;
  }
  std::sort(stats.begin(), stats.end());
  const double a = 1.0 - boot.confidence;
  // Percentile bounds, widened if needed so they bracket the point estimate.
  e.ci.lo = std::min(percentile_sorted(stats, a / 2.0), e.value);
  e.ci.hi = std::max(percentile_sorted(stats, 1.0 - a / 2.0), e.value);
  return e;
}

std::vector<double> davis_ratios(std::span<const double> series, double u, int lag) {
  if (lag < 1) throw invalid_argument("davis_ratios: lag must be >= 1");
  const auto i = static_cast<std::size_t>(lag);
  std::vector<double> out;
  for (std::size_t t = i; t < series.size(); ++t) {
    if (series[t] > u && series[t - i] > u) out.push_back(series[t] / series[t - i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

DavisRatio davis_ratio_min(std::span<const double> series, double u, int lag) {
  if (lag < 1) throw invalid_argument("davis_ratio_min: lag must be >= 1");
  const auto i = static_cast<std::size_t>(lag);
  DavisRatio d;
  d.ratio = std::numeric_limits<double>::infinity();
  for (std::size_t t = i; t < series.size(); ++t) {
    if (series[t] > u && series[t - i] > u) {
      d.ratio = std::min(d.ratio, series[t] / series[t - i]);
      ++d.pairs;
    }
  }
  if (d.pairs == 0) {
    throw InsufficientDataError("no extreme pairs at lag " + std::to_string(lag), 0);
  }
  return d;
}

double pearson_acf(std::span<const double> series, int kappa) {
  if (kappa < 0) throw invalid_argument("pearson_acf: negative lag");
  const std::size_t n = series.size();
  const auto k = static_cast<std::size_t>(kappa);
  if (n <= k) throw InsufficientDataError("pearson_acf: series not longer than the lag", n);
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
  double den = 0.0;
  for (double v : series) den += (v - mean) * (v - mean);
  if (!(den > 0.0)) throw invalid_argument("pearson_acf: zero variance");
  double num = 0.0;
  for (std::size_t t = 0; t + k < n; ++t) num += (series[t] - mean) * (series[t + k] - mean);
  return num / den;
}

DecayChange decay_change_lag(std::span<const double> curve, int max_lag,
                             const DecayChangeOptions& opt) {
  if (max_lag < 1 || curve.size() < static_cast<std::size_t>(max_lag)) {
    throw invalid_argument("decay_change_lag: curve must cover lags 1..max_lag");
  }
  DecayChange out;
  // Usable prefix: log chi is only defined while chi > 0.
  int usable = 0;
  while (usable < max_lag && curve[usable] > 0.0) ++usable;
  std::vector<double> logc(usable);
  for (int k = 0; k < usable; ++k) logc[k] = std::log(curve[k]);
  auto L = [&](int lag) { return logc[lag - 1]; };

  const int w = std::max(1, opt.window);
  for (int k = std::max(2, opt.min_lag); k + w <= usable; ++k) {
    const double before = (L(1) - L(k)) / static_cast<double>(k - 1);
    if (before < opt.min_rate) continue;
    bool slower = true;
    for (int s = 0; s < w && slower; ++s) slower = (L(k + s) - L(k + s + 1)) <= opt.rate_drop * before;
    if (slower) {
      out.lag = k;
      out.found = true;
      return out;
    }
  }
  out.lag = max_lag;
  out.warnings.emplace_back("no deceleration in the decay of chi found; using max lag " +
                            std::to_string(max_lag));
  return out;
}

EmpiricalMeasures estimate_measures(std::span<const double> series, ThresholdSpec spec,
                                    int kappa_max, int run_length, const BootstrapConfig& boot) {
  EmpiricalMeasures m;
  m.u = resolve_threshold(series, spec);
  const auto level = ThresholdSpec::absolute(m.u);
  m.theta = theta_hat_runs(series, level, run_length, boot);
  for (int k = 1; k <= kappa_max; ++k) m.chi.emplace(k, chi_hat(series, level, k, boot.confidence));
  return m;
}

}  // namespace maxarma
