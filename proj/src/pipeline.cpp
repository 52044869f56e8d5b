#include "maxarma/pipeline.hpp"

#include <algorithm>

#include "maxarma/error.hpp"

namespace maxarma {

namespace {

template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  } catch (const std::exception& e) {
    throw StageError(name, Error(ErrorKind::InvalidArgument, e.what()));
  }
}

}  // namespace

PipelineResult pipeline_fit(std::span<const double> raw, const PipelineConfig& config) {
  if (!config.marginal_threshold) throw invalid_argument("pipeline: marginal threshold is required");
  if (config.orders.empty()) throw invalid_argument("pipeline: no (p,q) order requested");
  if (config.T && *config.T < 1) throw invalid_argument("pipeline: T must be positive");
  if (config.T_search_max < 2) throw invalid_argument("pipeline: T search range too short");

  PipelineResult out;
  stage("marginal", [&] {
    out.marginal = MarginalModel::fit(raw, *config.marginal_threshold);
    out.frechet = out.marginal->to_frechet(raw);
    out.qq = qq_data(*out.marginal, raw, config.qq);
  });

  int pq_max = 1, p_max = 1;
  for (const Order& o : config.orders) {
    pq_max = std::max(pq_max, o.p + o.q);
    p_max = std::max(p_max, o.p);
  }

  const EmpiricalMoments data = stage("estimation", [&] {
    std::vector<double> curve;
    const double level = resolve_threshold(out.frechet, config.u);
    for (int k = 1; k <= config.T_search_max; ++k) {
      curve.push_back(chi_hat(out.frechet, ThresholdSpec::absolute(level), k).value);
    }
    DecayChangeOptions dco;
    dco.min_lag = pq_max;
    out.T_suggestion = decay_change_lag(curve, config.T_search_max, dco);
    out.T = config.T.value_or(std::max(out.T_suggestion.lag, pq_max));
    if (!config.T) {
      for (const auto& w : out.T_suggestion.warnings) out.warnings.push_back("T suggestion: " + w);
    }
    return compute_empirical_moments(out.frechet, config.u, out.T, p_max);
  });

  for (const Order& o : config.orders) {
    ScanCell cell;
    cell.order = o;
    try {
      const MomentSpec spec = build_moment_spec(o, config.u, out.T, config.omega);
      cell.fit = fit(data, spec, config.fit);
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.error = std::string("optimization: ") + e.what();
    }
    out.cells.push_back(std::move(cell));
  }
  return out;
}

}  // namespace maxarma
