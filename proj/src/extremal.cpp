#include "maxarma/extremal.hpp"

#include <algorithm>

#include "maxarma/error.hpp"

namespace maxarma {

namespace {

double lagged_min_sum(const std::vector<double>& g, double gamma, int N, int kappa) {
  double s = 0.0;
  for (int d = 0; d <= N; ++d) s += std::min(g[d], g[d + kappa]);
  return std::clamp(gamma * s, 0.0, 1.0);
}

}  // namespace

double extremal_index(const WeightSequence& ws) { return ws.gamma() * ws.params().max_beta(); }

double chi(const WeightSequence& ws, int kappa) {
  if (kappa < 1) throw invalid_argument("chi: kappa must be >= 1");
  const int N = ws.truncation();
  const auto& stored = ws.gamma_tau();
  if (stored.size() > static_cast<std::size_t>(N + kappa)) {
    return lagged_min_sum(stored, ws.gamma(), N, kappa);
  }
  return lagged_min_sum(ws.extended(N + kappa), ws.gamma(), N, kappa);
}

std::vector<double> chi_curve(const WeightSequence& ws, int kappa_max) {
  if (kappa_max < 1) throw invalid_argument("chi_curve: kappa_max must be >= 1");
  const int N = ws.truncation();
  const auto g = ws.extended(N + kappa_max);
  std::vector<double> out(kappa_max);
  for (int k = 1; k <= kappa_max; ++k) out[k - 1] = lagged_min_sum(g, ws.gamma(), N, k);
  return out;
}

bool gamma_strictly_decreasing(const WeightSequence& ws) {
  const auto& g = ws.gamma_tau();
  for (std::size_t t = 1; t < g.size(); ++t) {
    if (!(g[t] < g[t - 1])) return false;
  }
  return true;
}

double chi_monotone_shortcut(const WeightSequence& ws, int kappa) {
  if (kappa < 0) throw invalid_argument("chi_monotone_shortcut: kappa must be >= 0");
  if (!gamma_strictly_decreasing(ws)) {
    throw InfeasibleError("monotone shortcut inapplicable: gamma_tau is not strictly decreasing");
  }
  if (kappa > ws.truncation()) {
    throw invalid_argument("chi_monotone_shortcut: kappa exceeds truncation");
  }
  const auto& g = ws.gamma_tau();
  double head = 0.0;
  for (int t = 0; t < kappa; ++t) head += g[t];
  return 1.0 - ws.gamma() * head;
}

ExtremalSummary extremal_summary(const WeightSequence& ws, int kappa_max) {
  ExtremalSummary s;
  s.theta = extremal_index(ws);
  const auto c = chi_curve(ws, kappa_max);
  for (int k = 1; k <= kappa_max; ++k) s.chi.emplace(k, c[k - 1]);
  return s;
}

}  // namespace maxarma
