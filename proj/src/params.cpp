#include "maxarma/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "maxarma/error.hpp"

namespace maxarma {

namespace {

// Knuth's TwoSum: s + err == a + b exactly.
struct Sum {
  double s;
  double err;
};

Sum two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

// Given hi + lo == x - f exactly (x a double), returns x exactly. With lo == 0
// this is plain rounded addition.
double add_compensated(double hi, double lo, double f) {
  if (lo == 0.0) return hi + f;
  const Sum t = two_sum(hi, f);
  return t.s + (t.err + lo);
}

void check_order(Order o) {
  if (o.p < 1) throw DimensionError("AR order p must be >= 1");
  if (o.q < 0) throw DimensionError("MA order q must be >= 0");
}

void check_dims(const Params& x) {
  check_order(x.order);
  if (x.alpha.size() != static_cast<std::size_t>(x.order.p)) {
    throw DimensionError("alpha has " + std::to_string(x.alpha.size()) + " entries, expected p=" +
                         std::to_string(x.order.p));
  }
  if (x.beta.size() != static_cast<std::size_t>(x.order.q) + 1) {
    throw DimensionError("beta has " + std::to_string(x.beta.size()) +
                         " entries, expected q+1=" + std::to_string(x.order.q + 1));
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Params::Params(Order o, std::vector<double> a, std::vector<double> b)
    : order(o), alpha(std::move(a)), beta(std::move(b)) {
  check_dims(*this);
}

Params Params::autoregressive(std::vector<double> a) {
  const int p = static_cast<int>(a.size());
  return Params(Order{p, 0}, std::move(a), {1.0});
}

double Params::max_beta() const { return *std::max_element(beta.begin(), beta.end()); }

ReparamParams::ReparamParams(Order o, std::vector<double> d, std::vector<double> e)
    : order(o), delta(std::move(d)), epsilon(std::move(e)) {
  check_order(order);
  if (delta.size() != static_cast<std::size_t>(order.p) ||
      epsilon.size() != static_cast<std::size_t>(order.q)) {
    throw DimensionError("reparametrised vectors do not match order (" +
                         std::to_string(order.p) + "," + std::to_string(order.q) + ")");
  }
}

double identifiability_floor(std::span<const double> alpha, int k) {
  if (k < 2 || static_cast<std::size_t>(k) > alpha.size()) {
    throw invalid_argument("identifiability_floor: k=" + std::to_string(k) + " outside [2, " +
                           std::to_string(alpha.size()) + "]");
  }
  double best = 0.0;
  for (int i = 1; i <= k / 2; ++i) best = std::max(best, alpha[i - 1] * alpha[k - i - 1]);
  return best;
}

std::vector<Violation> validate_theta(const Params& x) {
  check_dims(x);
  std::vector<Violation> out;
  const int p = x.p();
  const int q = x.q();
  auto add = [&](std::string code, int idx, std::string detail) {
    out.push_back({std::move(code), idx, std::move(detail)});
  };

  bool finite = true;
  for (double v : x.alpha) finite = finite && std::isfinite(v);
  for (double v : x.beta) finite = finite && std::isfinite(v);
  if (!finite) {
    add("finite", 0, "coefficients must be finite");
    return out;
  }

  if (x.beta[0] != 1.0) add("beta0_unit", 0, "beta_0 = 1 fails (got " + fmt(x.beta[0]) + ")");

  for (int i = 1; i <= p; ++i) {
    const double a = x.alpha[i - 1];
    const std::string ai = "alpha_" + std::to_string(i);
    if (!(a < 1.0)) add("alpha_upper", i, ai + " < 1 fails (got " + fmt(a) + ")");
    if (i == 1 && p > 1 && a < 0.0) add("alpha_nonneg", 1, ai + " >= 0 fails (got " + fmt(a) + ")");
    if (i == 1 && p == 1 && !(a > 0.0)) {
      add("alpha_p_positive", 1, ai + " > 0 fails (got " + fmt(a) + ")");
    }
    if (i >= 2) {
      const double f = identifiability_floor(x.alpha, i);
      if (i < p && a < f) {
        add("alpha_floor", i, ai + " >= " + fmt(f) + " (identifiability floor) fails");
      } else if (i == p && !(a > f)) {
        add("alpha_p_floor", i, ai + " > " + fmt(f) + " (identifiability floor) fails");
      }
    }
  }

  for (int j = 1; j <= std::min(p, q - 1); ++j) {
    if (x.beta[j] < x.alpha[j - 1]) {
      add("beta_ge_alpha", j,
          "beta_" + std::to_string(j) + " >= alpha_" + std::to_string(j) + " fails");
    }
  }
  if (q > p) {
    for (int j = p + 1; j <= q - 1; ++j) {
      if (x.beta[j] < 0.0) add("beta_nonneg", j, "beta_" + std::to_string(j) + " >= 0 fails");
    }
    if (!(x.beta[q] > 0.0)) add("beta_q_positive", q, "beta_" + std::to_string(q) + " > 0 fails");
  } else if (q >= 1) {
    const double bound = std::max(x.alpha[q - 1], 0.0);
    if (!(x.beta[q] > bound)) {
      add("beta_q_gt_alpha", q, "beta_" + std::to_string(q) + " > max(alpha_" +
                                    std::to_string(q) + ", 0) fails");
    }
  }
  return out;
}

std::vector<Violation> validate_process(const Params& x) {
  std::vector<Violation> out;
  auto add = [&](std::string code, int idx, std::string detail) {
    out.push_back({std::move(code), idx, std::move(detail)});
  };
  for (double v : x.alpha) {
    if (!std::isfinite(v)) return {{"finite", 0, "coefficients must be finite"}};
  }
  for (double v : x.beta) {
    if (!std::isfinite(v)) return {{"finite", 0, "coefficients must be finite"}};
  }
  if (x.beta[0] != 1.0) add("beta0_unit", 0, "beta_0 = 1 fails (got " + fmt(x.beta[0]) + ")");
  const int p = x.p();
  for (int i = 1; i <= p; ++i) {
    const double a = x.alpha[i - 1];
    const std::string ai = "alpha_" + std::to_string(i);
    if (!(a < 1.0)) add("alpha_upper", i, ai + " < 1 fails (got " + fmt(a) + ")");
    if (a < 0.0) add("alpha_nonneg", i, ai + " >= 0 fails (got " + fmt(a) + ")");
  }
  if (p >= 1 && !(x.alpha[p - 1] > 0.0)) {
    add("alpha_p_positive", p, "alpha_" + std::to_string(p) + " > 0 fails");
  }
  for (int j = 1; j <= x.q(); ++j) {
    if (x.beta[j] < 0.0) add("beta_nonneg", j, "beta_" + std::to_string(j) + " >= 0 fails");
  }
  return out;
}

ReparamParams to_reparam(const Params& x) {
  const auto report = validate_theta(x);
  if (!report.empty()) throw InfeasibleError("to_reparam: " + report.front().detail);

  const int p = x.p();
  const int q = x.q();
  ReparamParams rp(x.order, std::vector<double>(p), std::vector<double>(q));
  rp.delta_residual.assign(p, 0.0);
  rp.epsilon_residual.assign(q, 0.0);

  for (int i = 1; i <= p; ++i) {
    const double f = i == 1 ? 0.0 : identifiability_floor(x.alpha, i);
    const Sum d = two_sum(x.alpha[i - 1], -f);
    rp.delta[i - 1] = d.s;
    rp.delta_residual[i - 1] = d.err;
  }
  for (int j = 1; j <= q; ++j) {
    const double shift = j <= p ? x.alpha[j - 1] : 0.0;
    const Sum e = two_sum(x.beta[j], -shift);
    rp.epsilon[j - 1] = e.s;
    rp.epsilon_residual[j - 1] = e.err;
  }
  return rp;
}

Params from_reparam(const ReparamParams& rp) {
  check_order(rp.order);
  const int p = rp.order.p;
  const int q = rp.order.q;
  if (rp.delta.size() != static_cast<std::size_t>(p) ||
      rp.epsilon.size() != static_cast<std::size_t>(q)) {
    throw DimensionError("from_reparam: vector lengths do not match order");
  }
  const auto residual = [](const std::vector<double>& r, int idx) {
    return r.empty() ? 0.0 : r.at(idx);
  };

  std::vector<double> alpha(p, 0.0);
  for (int i = 1; i <= p; ++i) {
    const double f = i == 1 ? 0.0 : identifiability_floor(alpha, i);
    const double a = add_compensated(rp.delta[i - 1], residual(rp.delta_residual, i - 1), f);
    if (!std::isfinite(a) || !(a < 1.0)) {
      throw InfeasibleError("from_reparam: alpha_" + std::to_string(i) + " = " + fmt(a) +
                            " violates stationarity");
    }
    alpha[i - 1] = a;
  }
  std::vector<double> beta(q + 1, 0.0);
  beta[0] = 1.0;
  for (int j = 1; j <= q; ++j) {
    const double shift = j <= p ? alpha[j - 1] : 0.0;
    const double b = add_compensated(rp.epsilon[j - 1], residual(rp.epsilon_residual, j - 1), shift);
    if (!std::isfinite(b)) throw InfeasibleError("from_reparam: non-finite beta");
    beta[j] = b;
  }
  return Params(rp.order, std::move(alpha), std::move(beta));
}

bool in_reparam_space(const ReparamParams& rp) {
  const int p = rp.order.p;
  const int q = rp.order.q;
  for (int i = 0; i < p; ++i) {
    if (!std::isfinite(rp.delta[i]) || rp.delta[i] < 0.0) return false;
  }
  if (!(rp.delta[p - 1] > 0.0)) return false;
  for (int j = 0; j < q; ++j) {
    if (!std::isfinite(rp.epsilon[j]) || rp.epsilon[j] < 0.0) return false;
  }
  if (q >= 1 && !(rp.epsilon[q - 1] > 0.0)) return false;
  return true;
}

}  // namespace maxarma
