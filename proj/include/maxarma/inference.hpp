#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxarma/empirical.hpp"
#include "maxarma/params.hpp"
#include "maxarma/simplex.hpp"

namespace maxarma {

/// Which extremal moments enter the objective for one (p,q).
///
/// Moments are theta, chi_1, chi_{T_m} for m = 3..p+q+1 with
/// T_m = floor(T (m-2) / (p+q)), and chi_T. Repeated lags are dropped (with
/// a warning); the moment divisor stays p+q+2 regardless.
struct MomentSpec {
  Order order;
  ThresholdSpec u = ThresholdSpec::quantile(0.95);
  int T = 1;
  std::vector<int> lags;  // chi lags in moment order, duplicates removed
  double omega = 0.5;
  std::vector<std::string> warnings;

  [[nodiscard]] int divisor() const noexcept { return order.p + order.q + 2; }
};

/// (p+q+2) / (2p+q+2): equal weight per moment across the two terms.
[[nodiscard]] double default_omega(Order order);

/// Throws when T < p+q or omega is outside (0,1].
MomentSpec build_moment_spec(Order order, ThresholdSpec u, int T,
                             std::optional<double> omega = std::nullopt);

/// Data-side statistics, computed once per threshold and reused by every
/// objective evaluation (and every cell of an order scan).
struct EmpiricalMoments {
  double level = 0.0;
  double theta = 0.0;
  std::vector<double> chi;                  // chi[k-1] = chi_hat_k(u), k = 1..max_lag
  std::vector<std::vector<double>> ratios;  // ratios[i-1]: sorted x_t/x_{t-i} over T(u,i)
  std::size_t exceedances = 0;
};

/// Requires at least one exceedance of u (InsufficientDataError otherwise).
EmpiricalMoments compute_empirical_moments(std::span<const double> frechet, ThresholdSpec u,
                                           int max_lag, int max_ar_lag);

struct MomentRow {
  std::string name;  // "theta" or "chi_k"
  int lag = 0;       // 0 for theta
  double empirical = 0.0;
  double model = 0.0;
  double squared_error = 0.0;
};

struct RatioRow {
  int lag = 0;
  std::size_t pairs = 0;
  double min_ratio = 0.0;  // NaN when there are no extreme pairs
  double alpha = 0.0;
  double term = 0.0;       // min over pairs of (ratio - alpha)^2
  bool used = false;
};

struct ObjectiveBreakdown {
  double value = 0.0;
  double moment_term = 0.0;
  double ratio_term = 0.0;
  int truncation = 0;
  std::vector<MomentRow> moments;
  std::vector<RatioRow> ratios;
  std::vector<std::string> warnings;
};

inline constexpr double kModelTruncationTolerance = 1e-6;

///   omega/(p+q+2) sum_m (M_hat_m - M_m)^2
///     + (1-omega)/p' sum_i min_{t in T(u,i)} (x_t/x_{t-i} - a_i)^2
///
/// where p' counts the AR lags that have extreme pairs (lags without pairs
/// are dropped). Model moments use an adaptively chosen truncation.
ObjectiveBreakdown objective_breakdown(const Params& params, const MomentSpec& spec,
                                       const EmpiricalMoments& data,
                                       double truncation_tol = kModelTruncationTolerance);

/// The objective at a point of the orthogonalised space; +infinity when the
/// point is outside it or maps to a non-admissible (alpha, beta).
double objective(const ReparamParams& rp, const MomentSpec& spec, const EmpiricalMoments& data,
                 double truncation_tol = kModelTruncationTolerance);

struct FitOptions {
  std::size_t starts = 20;
  std::uint64_t seed = 20240229;
  // Boxes the multistart points are drawn from.
  double delta1_max = 0.99;
  double delta_max = 0.3;
  double epsilon_max = 5.0;
  SimplexOptions simplex{};
  unsigned threads = 0;
  double truncation_tol = kModelTruncationTolerance;
};

struct StartRecord {
  std::size_t index = 0;
  std::vector<double> start;
  std::vector<double> optimum;
  double value = 0.0;
  std::size_t evaluations = 0;
  int restarts = 0;
  bool converged = false;
};

struct FitResult {
  Order order;
  MomentSpec spec;
  Params params_hat;
  ReparamParams reparam_hat;
  double objective = 0.0;
  ObjectiveBreakdown breakdown;
  std::vector<StartRecord> starts;
  std::size_t evaluations = 0;
  std::vector<std::string> warnings;
};

/// Multistart simplex minimisation of the objective over (delta, epsilon).
/// Deterministic in options.seed.
FitResult fit(std::span<const double> frechet, const MomentSpec& spec, const FitOptions& options = {});
FitResult fit(const EmpiricalMoments& data, const MomentSpec& spec, const FitOptions& options = {});

struct ModelMeasures {
  double level = 0.0;
  double theta = 0.0;
  std::map<int, double> chi;
};

/// Sub-asymptotic theta(u) and chi_k(u) of a fitted model, estimated from a
/// long simulation at the quantile threshold u.
ModelMeasures model_based_measures(const Params& params, ThresholdSpec u,
                                   std::span<const int> kappas,
                                   std::size_t mc_length = 1'000'000,
                                   std::uint64_t seed = 20240229);

struct OrderScanOptions {
  ThresholdSpec u = ThresholdSpec::quantile(0.95);
  int T = 14;
  std::optional<double> omega;  // default: per-order default_omega
  FitOptions fit{};
  std::size_t mc_length = 0;    // 0 skips model-based measures
  std::uint64_t mc_seed = 20240229;
  std::vector<int> kappas;      // lags for model-based chi
};

struct ScanCell {
  Order order;
  bool ok = false;
  std::string error;
  std::optional<FitResult> fit;
  std::optional<ModelMeasures> measures;
};

/// Fits every (p,q) in the grid; failed cells are recorded and the scan
/// continues. No order is selected.
std::vector<ScanCell> order_scan(std::span<const double> frechet, std::span<const int> p_range,
                                 std::span<const int> q_range, const OrderScanOptions& options);

}  // namespace maxarma
