#include "maxarma/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "maxarma/error.hpp"
#include "maxarma/weights.hpp"

namespace maxarma {

namespace {
constexpr double kScaleTolerance = 1e-10;
}

std::vector<double> sample_frechet(double scale, std::size_t count, Rng& rng) {
  if (!(scale > 0.0)) throw invalid_argument("sample_frechet: scale must be > 0");
  std::vector<double> z(count);
  for (auto& v : z) v = -scale / std::log(rng.uniform());
  return z;
}

std::size_t minimum_burn_in(Order order) {
  return static_cast<std::size_t>(order.q - std::min(order.p, order.q));
}

SimulatedSeries simulate(const SimulationConfig& config) {
  const Params& x = config.params;
  if (config.n == 0) throw invalid_argument("simulate: n must be positive");
  if (config.burn_in < minimum_burn_in(x.order)) {
    throw invalid_argument("simulate: burn-in " + std::to_string(config.burn_in) +
                           " below the minimum q - min(p,q) = " +
                           std::to_string(minimum_burn_in(x.order)));
  }
  if (const auto report = validate_process(x); !report.empty()) {
    throw InfeasibleError("simulate: " + report.front().detail);
  }

  const auto p = static_cast<std::size_t>(x.p());
  const auto q = static_cast<std::size_t>(x.q());
  const std::size_t total = config.burn_in + config.n;
  const double scale =
      stationarity_scale(x, adaptive_truncation(x, kScaleTolerance));

  Rng rng(config.seed);
  // Stream order is part of the reproducibility contract: p initial values,
  // then q lead-in innovations followed by one innovation per step.
  std::vector<double> xs = sample_frechet(1.0, std::min(p, total), rng);
  xs.resize(total);
  // z[k + q] is the innovation at internal time k, k = -q .. total-1.
  const std::vector<double> z = sample_frechet(scale, total + q, rng);

  for (std::size_t k = p; k < total; ++k) {
    double v = 0.0;
    for (std::size_t i = 1; i <= p; ++i) v = std::max(v, x.alpha[i - 1] * xs[k - i]);
    for (std::size_t j = 0; j <= q; ++j) v = std::max(v, x.beta[j] * z[k + q - j]);
    xs[k] = v;
  }

  SimulatedSeries out;
  out.config = config;
  out.innovation_scale = scale;
  out.first_recursive = p > config.burn_in ? p - config.burn_in : 0;
  out.values.assign(xs.begin() + static_cast<std::ptrdiff_t>(config.burn_in), xs.end());
  if (config.keep_innovations) {
    out.innovations.assign(z.begin() + static_cast<std::ptrdiff_t>(config.burn_in + q), z.end());
  }
  return out;
}

std::vector<double> to_gumbel(std::span<const double> values) {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw invalid_argument("to_gumbel: non-positive value");
    out[i] = std::log(values[i]);
  }
  return out;
}

}  // namespace maxarma
