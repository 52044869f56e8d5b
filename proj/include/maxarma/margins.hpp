#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maxarma/empirical.hpp"

namespace maxarma {

/// Semiparametric marginal distribution: linearly interpolated empirical CDF
/// below u_M and a Pareto tail above it,
///
///   P(Y > y) = d (u_M / y)^c,  y >= u_M.
///
/// Body knots sit at the distinct order statistics below u_M with plotting
/// positions i/(n+1); the body ends at (u_M, 1-d) so the CDF is continuous
/// there. Below the sample minimum the CDF falls linearly to 0 at zero (or,
/// for non-positive data, at y_min - (u_M - y_min)).
class MarginalModel {
 public:
  /// Hill fit at the given level. Exceedances are strict (y > u_M).
  static MarginalModel fit(std::span<const double> data, double u_M);
  static MarginalModel fit(std::span<const double> data, ThresholdSpec u_M);

  /// Rebuild from stored parameters and the training sample,
  /// e.g. from a serialised model.
  static MarginalModel from_parts(std::vector<double> sample, double u_M, double c, double d);

  [[nodiscard]] double threshold() const noexcept { return u_; }
  [[nodiscard]] double tail_index() const noexcept { return c_; }
  [[nodiscard]] double tail_fraction() const noexcept { return d_; }
  [[nodiscard]] std::size_t size() const noexcept { return sorted_.size(); }
  [[nodiscard]] std::size_t exceedances() const noexcept { return n_u_; }
  [[nodiscard]] const std::vector<double>& sorted_sample() const noexcept { return sorted_; }

  [[nodiscard]] double cdf(double y) const;
  /// P(Y > y), accurate in the far tail.
  [[nodiscard]] double survival(double y) const;
  /// Inverse CDF for prob in (0,1).
  [[nodiscard]] double quantile(double prob) const;

  /// x = -1 / log F(y).
  [[nodiscard]] double to_frechet(double y) const;
  /// y = F^{-1}(exp(-1/x)), x > 0.
  [[nodiscard]] double from_frechet(double x) const;

  [[nodiscard]] std::vector<double> to_frechet(std::span<const double> ys) const;
  [[nodiscard]] std::vector<double> from_frechet(std::span<const double> xs) const;

 private:
  MarginalModel() = default;
  void build_knots();
  [[nodiscard]] double body_inverse(double prob) const;

  std::vector<double> sorted_;
  double u_ = 0.0;
  double c_ = 1.0;
  double d_ = 0.0;
  std::size_t n_u_ = 0;
  // Piecewise linear body, strictly increasing in both coordinates.
  std::vector<double> knot_y_;
  std::vector<double> knot_f_;
};

struct QqPoint {
  double model = 0.0;     // fitted tail quantile, Gumbel scale
  double empirical = 0.0; // observed exceedance, Gumbel scale
  double lower = 0.0;     // pointwise tolerance bounds
  double upper = 0.0;
};

struct QqOptions {
  std::size_t replicates = 1000;
  double confidence = 0.95;
  std::uint64_t seed = 20240229;
};

/// QQ data for the exceedances of u_M at plotting positions (i - 0.5)/n_u,
/// with tolerance bounds from simulating the fitted Pareto tail. Values are
/// mapped to the Gumbel scale through the fitted model, -log(-log F(y)).
/// Requires at least 5 exceedances.
std::vector<QqPoint> qq_data(const MarginalModel& model, std::span<const double> data,
                             const QqOptions& options = {});

}  // namespace maxarma
