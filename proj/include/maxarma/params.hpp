#pragma once

#include <span>
#include <string>
#include <vector>

namespace maxarma {

struct Order {
  int p = 1;  // autoregressive order, >= 1
  int q = 0;  // moving-average order, >= 0

  friend bool operator==(const Order&, const Order&) = default;
};

/// Coefficients of a Max-ARMA(p,q) recursion
///
///   X_t = max{ a_1 X_{t-1}, ..., a_p X_{t-p}, b_0 Z_t, ..., b_q Z_{t-q} }.
///
/// `beta` always holds q+1 entries and beta[0] is the unit innovation weight,
/// so beta[j] is b_j. `alpha[i-1]` is a_i.
struct Params {
  Order order;
  std::vector<double> alpha;
  std::vector<double> beta;

  Params() = default;
  Params(Order o, std::vector<double> a, std::vector<double> b);

  /// Pure AR helper: beta = {1}.
  static Params autoregressive(std::vector<double> a);

  [[nodiscard]] int p() const noexcept { return order.p; }
  [[nodiscard]] int q() const noexcept { return order.q; }
  [[nodiscard]] double max_beta() const;

  friend bool operator==(const Params&, const Params&) = default;
};

/// Coordinates of the orthogonalised parameter space.
///
/// delta[i-1] = a_i minus its identifiability floor (delta_1 = a_1);
/// epsilon[j-1] = b_j - a_j for j <= min(p,q), b_j otherwise.
///
/// `*_residual` hold the rounding error of the subtraction performed by
/// to_reparam (an unevaluated double-double sum). They are empty for points
/// proposed directly in this space, and make from_reparam(to_reparam(x))
/// reproduce x bit for bit.
struct ReparamParams {
  Order order;
  std::vector<double> delta;
  std::vector<double> epsilon;
  std::vector<double> delta_residual;
  std::vector<double> epsilon_residual;

  ReparamParams() = default;
  ReparamParams(Order o, std::vector<double> d, std::vector<double> e);
};

struct Violation {
  std::string code;    // stable identifier, e.g. "alpha_upper"
  int index = 0;       // 1-based coefficient index the constraint refers to
  std::string detail;  // human readable message

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Checks membership of the identifiable stationary region. The report is
/// empty iff `params` is admissible. Throws DimensionError when the vector
/// lengths disagree with the order.
std::vector<Violation> validate_theta(const Params& params);

/// Weaker check: a well-defined stationary process (finite, beta_0 = 1,
/// 0 <= a_i < 1, a_p > 0, b_j >= 0) without the identifiability floors.
/// Simulation and the limiting measures only need this.
std::vector<Violation> validate_process(const Params& params);

[[nodiscard]] inline bool is_admissible(const Params& params) {
  return validate_theta(params).empty();
}

/// max over i = 1..floor(k/2) of a_i a_{k-i}; only a_1..a_{k-1} are read.
/// Requires 2 <= k <= alpha.size().
double identifiability_floor(std::span<const double> alpha, int k);

/// Throws InfeasibleError when params is not admissible.
ReparamParams to_reparam(const Params& params);

/// Inverse of to_reparam. Throws InfeasibleError when a recovered a_i >= 1
/// (or is not finite); sign constraints on delta/epsilon are *not* checked
/// here, see in_reparam_space.
Params from_reparam(const ReparamParams& rp);

/// Sign constraints: delta_i >= 0, delta_p > 0, epsilon_j >= 0, epsilon_q > 0.
[[nodiscard]] bool in_reparam_space(const ReparamParams& rp);

}  // namespace maxarma
