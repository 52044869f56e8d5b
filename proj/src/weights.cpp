#include "maxarma/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maxarma/error.hpp"

namespace maxarma {

std::vector<double> gamma_tau_dp(const Params& params, int N) {
  if (N < 1) throw invalid_argument("gamma_tau_dp: N must be >= 1");
  const int p = params.p();
  const int q = params.q();

  // ar[t]: best product of AR coefficients whose lags sum to t.
  std::vector<double> ar(N + 1, 0.0);
  ar[0] = 1.0;
  for (int t = 1; t <= N; ++t) {
    double best = 0.0;
    for (int i = 1; i <= std::min(p, t); ++i) best = std::max(best, params.alpha[i - 1] * ar[t - i]);
    ar[t] = best;
  }

  std::vector<double> out(N + 1, 0.0);
  for (int t = 0; t <= N; ++t) {
    double best = 0.0;
    for (int j = 0; j <= std::min(q, t); ++j) best = std::max(best, params.beta[j] * ar[t - j]);
    out[t] = best;
  }
  return out;
}

namespace {

void enumerate(const Params& x, int i, int remaining, double product, double& best) {
  const int p = x.p();
  if (i > p) {
    // Whatever lag is left over is taken up by the MA index j.
    if (remaining <= x.q()) best = std::max(best, x.beta[remaining] * product);
    return;
  }
  const double a = x.alpha[i - 1];
  const int max_count = a > 0.0 ? remaining / i : 0;
  double power = 1.0;
  for (int count = 0; count <= max_count; ++count) {
    enumerate(x, i + 1, remaining - count * i, product * power, best);
    power *= a;
  }
}

}  // namespace

double gamma_tau_bruteforce(const Params& params, int tau) {
  if (tau < 0 || tau > kBruteForceTauLimit) {
    throw invalid_argument("gamma_tau_bruteforce: tau=" + std::to_string(tau) +
                           " outside enumeration guard [0, " +
                           std::to_string(kBruteForceTauLimit) + "]");
  }
  double best = 0.0;
  enumerate(params, 1, tau, 1.0, best);
  return best;
}

double stationarity_scale(const Params& params, int N) {
  const auto g = gamma_tau_dp(params, N);
  return 1.0 / std::accumulate(g.begin(), g.end(), 0.0);
}

double truncation_diagnostic(const Params& params, int N) {
  if (N < 2 * params.p()) {
    throw invalid_argument("truncation_diagnostic: N must be >= 2p");
  }
  double r = 0.0;
  for (int i = 1; i <= params.p(); ++i) {
    const double a = params.alpha[i - 1];
    if (a > 0.0) r = std::max(r, std::pow(a, 1.0 / i));
  }
  if (!(r < 1.0)) throw InfeasibleError("truncation_diagnostic: max a_i^(1/i) >= 1 (non-stationary)");
  const auto g = gamma_tau_dp(params, N);
  const double total = std::accumulate(g.begin(), g.end(), 0.0);
  return g[N] * r / (1.0 - r) / total;
}

int adaptive_truncation(const Params& params, double tol, int N0, int n_max) {
  int N = std::max(N0, 2 * params.p());
  while (N < n_max && truncation_diagnostic(params, N) > tol) N = std::min(2 * N, n_max);
  return N;
}

WeightSequence::WeightSequence(Params params, int truncation, int lookahead)
    : params_(std::move(params)), truncation_(truncation) {
  if (lookahead < 0) throw invalid_argument("WeightSequence: negative lookahead");
  gamma_tau_ = gamma_tau_dp(params_, truncation_ + lookahead);
  const double total =
      std::accumulate(gamma_tau_.begin(), gamma_tau_.begin() + truncation_ + 1, 0.0);
  gamma_ = 1.0 / total;
}

std::vector<double> WeightSequence::extended(int upto) const {
  if (static_cast<std::size_t>(upto) < gamma_tau_.size()) {
    return {gamma_tau_.begin(), gamma_tau_.begin() + upto + 1};
  }
  return gamma_tau_dp(params_, upto);
}

}  // namespace maxarma
