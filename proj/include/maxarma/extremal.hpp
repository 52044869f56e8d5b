#pragma once

#include <map>
#include <vector>

#include "maxarma/weights.hpp"

namespace maxarma {

/// Limiting extremal measures of a stationary Max-ARMA process.
/// chi is stored for kappa >= 1 only; chi_{-kappa} equals chi_{kappa}.
struct ExtremalSummary {
  double theta = 1.0;
  std::map<int, double> chi;
};

/// theta = gamma * max_j b_j.
double extremal_index(const WeightSequence& ws);

/// chi_kappa = gamma * sum_{d=0}^{N} min(gamma_d, gamma_{d+kappa}), clamped to
/// [0,1]. Uses the same truncation N as gamma.
double chi(const WeightSequence& ws, int kappa);

/// chi_1..chi_kmax from a single extension of the weight sequence.
std::vector<double> chi_curve(const WeightSequence& ws, int kappa_max);

/// 1 - gamma * sum_{tau<kappa} gamma_tau, valid only when gamma_tau is
/// strictly decreasing over the computed range (throws InfeasibleError
/// otherwise). kappa = 0 gives 1.
double chi_monotone_shortcut(const WeightSequence& ws, int kappa);

[[nodiscard]] bool gamma_strictly_decreasing(const WeightSequence& ws);

ExtremalSummary extremal_summary(const WeightSequence& ws, int kappa_max);

}  // namespace maxarma
