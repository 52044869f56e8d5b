#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxarma/empirical.hpp"
#include "maxarma/inference.hpp"
#include "maxarma/margins.hpp"

namespace maxarma {

struct PipelineConfig {
  std::optional<ThresholdSpec> marginal_threshold;  // required
  ThresholdSpec u = ThresholdSpec::quantile(0.95);
  std::optional<int> T;        // unset: use the decay-change suggestion
  int T_search_max = 50;
  std::vector<Order> orders;   // each is fitted; at least one
  std::optional<double> omega;
  FitOptions fit{};
  QqOptions qq{};
};

struct PipelineResult {
  std::optional<MarginalModel> marginal;
  std::vector<double> frechet;
  int T = 0;
  DecayChange T_suggestion;
  std::vector<QqPoint> qq;
  std::vector<ScanCell> cells;
  std::vector<std::string> warnings;
};

/// fit_marginal -> to_frechet -> empirical moments -> fit per order.
/// Configuration errors are raised before any computation; failures inside a
/// stage are rethrown as StageError. Individual order fits that fail are
/// recorded in their cell, like order_scan.
PipelineResult pipeline_fit(std::span<const double> raw, const PipelineConfig& config);

}  // namespace maxarma
