#include "maxarma/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxarma/error.hpp"
#include "maxarma/extremal.hpp"
#include "maxarma/rng.hpp"
#include "maxarma/simulate.hpp"
#include "maxarma/weights.hpp"
#include "parallel.hpp"

namespace maxarma {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kStartAttempts = 1000;

// min over sorted r of (r - a)^2: only the neighbours of a matter.
double nearest_squared(const std::vector<double>& sorted, double a) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), a);
  double best = kInf;
  if (it != sorted.end()) best = (*it - a) * (*it - a);
  if (it != sorted.begin()) best = std::min(best, (*(it - 1) - a) * (*(it - 1) - a));
  return best;
}

void check_coverage(const MomentSpec& spec, const EmpiricalMoments& data) {
  if (data.chi.size() < static_cast<std::size_t>(spec.T) ||
      data.ratios.size() < static_cast<std::size_t>(spec.order.p)) {
    throw invalid_argument("objective: empirical moments do not cover the moment lags");
  }
}

// Shared by objective() and objective_breakdown(); fills `detail` if given.
double evaluate(const Params& params, const MomentSpec& spec, const EmpiricalMoments& data,
                double tol, ObjectiveBreakdown* detail) {
  const int N = adaptive_truncation(params, tol);
  const WeightSequence ws(params, N, spec.T);

  double moment_sum = 0.0;
  auto add_moment = [&](int lag, double empirical, double model) {
    const double e = (empirical - model) * (empirical - model);
    moment_sum += e;
    if (detail) {
      detail->moments.push_back(
          {lag == 0 ? "theta" : "chi_" + std::to_string(lag), lag, empirical, model, e});
    }
  };
  add_moment(0, data.theta, extremal_index(ws));
  for (int lag : spec.lags) add_moment(lag, data.chi[static_cast<std::size_t>(lag - 1)], chi(ws, lag));

  double ratio_sum = 0.0;
  int usable = 0;
  for (int i = 1; i <= spec.order.p; ++i) {
    const auto& r = data.ratios[static_cast<std::size_t>(i - 1)];
    const double a = params.alpha[static_cast<std::size_t>(i - 1)];
    RatioRow row{i, r.size(), std::numeric_limits<double>::quiet_NaN(), a, 0.0, false};
    if (!r.empty()) {
      row.min_ratio = r.front();
      row.term = nearest_squared(r, a);
      row.used = true;
      ratio_sum += row.term;
      ++usable;
    }
    if (detail) detail->ratios.push_back(row);
  }

  const double moment_term = spec.omega / spec.divisor() * moment_sum;
  const double ratio_term = usable > 0 ? (1.0 - spec.omega) / usable * ratio_sum : 0.0;
  if (detail) {
    detail->truncation = N;
    detail->moment_term = moment_term;
    detail->ratio_term = ratio_term;
    detail->value = moment_term + ratio_term;
    if (usable < spec.order.p) {
      detail->warnings.push_back("ratio term: " + std::to_string(spec.order.p - usable) +
                                 " AR lag(s) without extreme pairs dropped");
    }
  }
  return moment_term + ratio_term;
}

ReparamParams point(Order order, std::span<const double> x) {
  const auto p = static_cast<std::size_t>(order.p);
  return ReparamParams(order, {x.begin(), x.begin() + static_cast<std::ptrdiff_t>(p)},
                       {x.begin() + static_cast<std::ptrdiff_t>(p), x.end()});
}

}  // namespace

double default_omega(Order order) {
  return static_cast<double>(order.p + order.q + 2) / static_cast<double>(2 * order.p + order.q + 2);
}

MomentSpec build_moment_spec(Order order, ThresholdSpec u, int T, std::optional<double> omega) {
  if (order.p < 1 || order.q < 0) throw invalid_argument("moment spec: require p >= 1, q >= 0");
  const int pq = order.p + order.q;
  if (T < pq || T < 1) {
    throw invalid_argument("moment spec: T = " + std::to_string(T) + " is below p+q = " +
                           std::to_string(pq));
  }
  MomentSpec s;
  s.order = order;
  s.u = u;
  s.T = T;
  s.omega = omega.value_or(default_omega(order));
  if (!(s.omega > 0.0 && s.omega <= 1.0)) throw invalid_argument("moment spec: omega must lie in (0,1]");

  std::vector<int> raw{1};
  for (int m = 3; m <= pq + 1; ++m) raw.push_back(T * (m - 2) / pq);
  raw.push_back(T);
  for (int lag : raw) {
    if (std::find(s.lags.begin(), s.lags.end(), lag) != s.lags.end()) {
      s.warnings.push_back("moment lag " + std::to_string(lag) + " repeated; duplicate dropped");
      continue;
    }
    s.lags.push_back(lag);
  }
  return s;
}

EmpiricalMoments compute_empirical_moments(std::span<const double> frechet, ThresholdSpec u,
                                           int max_lag, int max_ar_lag) {
  if (max_lag < 1 || max_ar_lag < 1) throw invalid_argument("empirical moments: lags must be >= 1");
  EmpiricalMoments m;
  m.level = resolve_threshold(frechet, u);
  const auto level = ThresholdSpec::absolute(m.level);
  BootstrapConfig none;
  none.resamples = 0;
  const ProportionEstimate th = theta_hat_runs(frechet, level, 1, none);
  m.theta = th.value;
  m.exceedances = th.exceedances;
  m.chi.reserve(static_cast<std::size_t>(max_lag));
  for (int k = 1; k <= max_lag; ++k) m.chi.push_back(chi_hat(frechet, level, k).value);
  for (int i = 1; i <= max_ar_lag; ++i) m.ratios.push_back(davis_ratios(frechet, m.level, i));
  return m;
}

ObjectiveBreakdown objective_breakdown(const Params& params, const MomentSpec& spec,
                                       const EmpiricalMoments& data, double truncation_tol) {
  check_coverage(spec, data);
  if (params.order != spec.order) throw DimensionError("objective: parameter order differs from spec");
  ObjectiveBreakdown out;
  evaluate(params, spec, data, truncation_tol, &out);
  return out;
}

double objective(const ReparamParams& rp, const MomentSpec& spec, const EmpiricalMoments& data,
                 double truncation_tol) {
  check_coverage(spec, data);
  if (!(rp.order == spec.order)) throw DimensionError("objective: parameter order differs from spec");
  if (!in_reparam_space(rp)) return kInf;
  Params params;
  try {
    params = from_reparam(rp);
  } catch (const InfeasibleError&) {
    return kInf;
  }
  // Rounding at the boundary can still leave the admissible region.
  if (!is_admissible(params)) return kInf;
  return evaluate(params, spec, data, truncation_tol, nullptr);
}

FitResult fit(std::span<const double> frechet, const MomentSpec& spec, const FitOptions& options) {
  const EmpiricalMoments data =
      compute_empirical_moments(frechet, spec.u, spec.T, spec.order.p);
  return fit(data, spec, options);
}

FitResult fit(const EmpiricalMoments& data, const MomentSpec& spec, const FitOptions& options) {
  if (options.starts == 0) throw invalid_argument("fit: at least one start is required");
  check_coverage(spec, data);
  const Order order = spec.order;
  const auto p = static_cast<std::size_t>(order.p);
  const auto dim = p + static_cast<std::size_t>(order.q);

  const Objective f = [&](std::span<const double> x) {
    return objective(point(order, x), spec, data, options.truncation_tol);
  };

  std::vector<double> hi(dim), step(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    hi[k] = k == 0 ? options.delta1_max : (k < p ? options.delta_max : options.epsilon_max);
    step[k] = 0.1 * hi[k];
  }

  std::vector<StartRecord> records(options.starts);
  detail::parallel_for(options.starts, options.threads, [&](std::size_t s) {
    StartRecord& rec = records[s];
    rec.index = s;
    rec.value = kInf;
    Rng rng = Rng::derive(options.seed, s);
    std::vector<double> x(dim);
    double fx = kInf;
    for (int attempt = 0; attempt < kStartAttempts && !std::isfinite(fx); ++attempt) {
      for (std::size_t k = 0; k < dim; ++k) x[k] = hi[k] * rng.uniform();
      fx = f(x);
    }
    rec.start = x;
    if (!std::isfinite(fx)) return;
    SimplexResult r = nelder_mead(f, x, step, options.simplex);
    rec.optimum = std::move(r.x);
    rec.value = r.value;
    rec.evaluations = r.evaluations;
    rec.restarts = r.restarts;
    rec.converged = r.converged;
  });

  // Lowest value wins; ties go to the lower start index.
  const StartRecord* best = nullptr;
  FitResult out;
  for (const auto& rec : records) {
    out.evaluations += rec.evaluations;
    if (std::isfinite(rec.value) && (!best || rec.value < best->value)) best = &rec;
  }
  if (!best) throw Error(ErrorKind::Optimization, "fit: no feasible start found");

  out.order = order;
  out.spec = spec;
  out.reparam_hat = point(order, best->optimum);
  out.params_hat = from_reparam(out.reparam_hat);
  out.breakdown = objective_breakdown(out.params_hat, spec, data, options.truncation_tol);
  out.objective = out.breakdown.value;
  out.warnings = spec.warnings;
  out.warnings.insert(out.warnings.end(), out.breakdown.warnings.begin(), out.breakdown.warnings.end());
  std::size_t infeasible = 0;
  for (const auto& rec : records) infeasible += std::isfinite(rec.value) ? 0 : 1;
  if (infeasible > 0) {
    out.warnings.push_back(std::to_string(infeasible) + " start(s) found no feasible point");
  }
  if (!best->converged) out.warnings.push_back("best start stopped on the evaluation budget");
  out.starts = std::move(records);
  return out;
}

ModelMeasures model_based_measures(const Params& params, ThresholdSpec u,
                                   std::span<const int> kappas, std::size_t mc_length,
                                   std::uint64_t seed) {
  SimulationConfig cfg;
  cfg.params = params;
  cfg.n = mc_length;
  cfg.seed = seed;
  const SimulatedSeries sim = simulate(cfg);
  ModelMeasures m;
  m.level = resolve_threshold(sim.values, u);
  const auto level = ThresholdSpec::absolute(m.level);
  BootstrapConfig none;
  none.resamples = 0;
  m.theta = theta_hat_runs(sim.values, level, 1, none).value;
  for (int k : kappas) m.chi[k] = chi_hat(sim.values, level, k).value;
  return m;
}

std::vector<ScanCell> order_scan(std::span<const double> frechet, std::span<const int> p_range,
                                 std::span<const int> q_range, const OrderScanOptions& options) {
  if (p_range.empty() || q_range.empty()) throw invalid_argument("order scan: empty order range");
  const int p_max = *std::max_element(p_range.begin(), p_range.end());
  if (p_max < 1) throw invalid_argument("order scan: p must be >= 1");
  const EmpiricalMoments data = compute_empirical_moments(frechet, options.u, options.T, p_max);

  std::vector<ScanCell> cells;
  for (int p : p_range) {
    for (int q : q_range) {
      ScanCell cell;
      cell.order = {p, q};
      try {
        const MomentSpec spec = build_moment_spec(cell.order, options.u, options.T, options.omega);
        cell.fit = fit(data, spec, options.fit);
        if (options.mc_length > 0) {
          cell.measures = model_based_measures(cell.fit->params_hat, options.u, options.kappas,
                                               options.mc_length, options.mc_seed);
        }
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace maxarma
