#pragma once

#include <vector>

#include "maxarma/params.hpp"

namespace maxarma {

inline constexpr int kDefaultTruncation = 100;
inline constexpr double kTruncationWarnLevel = 1e-6;

/// gamma_0..gamma_N where gamma_tau is the largest weight with which an
/// innovation reaches lag tau:
///
///   gamma_tau = max over (j, a_1..a_p) with sum(i a_i) + j = tau of
///               b_j * prod_{i: a_i > 0} a_i^{a_i},
///
/// with zero coefficients unusable in compositions. Computed by the
/// recursion A_0 = 1, A_t = max_i a_i A_{t-i}; gamma_t = max_j b_j A_{t-j},
/// which costs O(N (p+q)).
std::vector<double> gamma_tau_dp(const Params& params, int N);

inline constexpr int kBruteForceTauLimit = 20;

/// Exhaustive enumeration of the same maximum for a single tau. Exponential
/// in tau; kept as an oracle for gamma_tau_dp. Throws for tau > 20.
double gamma_tau_bruteforce(const Params& params, int tau);

/// Innovation scale giving unit Frechet margins: 1 / sum_{tau<=N} gamma_tau.
double stationarity_scale(const Params& params, int N = kDefaultTruncation);

/// Relative bound on the neglected tail of the gamma sum,
/// gamma_N r/(1-r) / sum_{tau<=N} gamma_tau with r = max_i a_i^{1/i}.
/// Requires N >= 2p.
double truncation_diagnostic(const Params& params, int N);

/// Smallest N in {N0, 2 N0, 4 N0, ...} (capped at n_max) whose truncation
/// diagnostic is at most `tol`.
int adaptive_truncation(const Params& params, double tol = kTruncationWarnLevel,
                        int N0 = kDefaultTruncation, int n_max = 1 << 16);

/// Truncated weight sequence plus the matching stationarity scale.
///
/// `gamma_tau` may extend beyond the truncation point (`lookahead` extra
/// entries) so that lagged sums such as chi can reuse it; `gamma` always
/// uses exactly gamma_0..gamma_N.
class WeightSequence {
 public:
  WeightSequence(Params params, int truncation = kDefaultTruncation, int lookahead = 0);

  [[nodiscard]] const Params& params() const noexcept { return params_; }
  [[nodiscard]] int truncation() const noexcept { return truncation_; }
  [[nodiscard]] const std::vector<double>& gamma_tau() const noexcept { return gamma_tau_; }
  [[nodiscard]] double gamma() const noexcept { return gamma_; }
  [[nodiscard]] double diagnostic() const { return truncation_diagnostic(params_, truncation_); }

  /// gamma_0..gamma_{upto}, reusing the stored prefix when long enough.
  [[nodiscard]] std::vector<double> extended(int upto) const;

 private:
  Params params_;
  int truncation_;
  std::vector<double> gamma_tau_;
  double gamma_;
};

}  // namespace maxarma
