#include "maxarma/margins.hpp"

#include <algorithm>
#include <cmath>

#include "maxarma/error.hpp"
#include "maxarma/rng.hpp"

namespace maxarma {

MarginalModel MarginalModel::fit(std::span<const double> data, ThresholdSpec u_M) {
  return fit(data, resolve_threshold(data, u_M));
}

MarginalModel MarginalModel::fit(std::span<const double> data, double u_M) {
  if (!(u_M > 0.0) || !std::isfinite(u_M)) {
    throw invalid_argument("fit_marginal: threshold u_M must be positive and finite");
  }
  MarginalModel m;
  m.sorted_.assign(data.begin(), data.end());
  for (double v : m.sorted_) {
    if (!std::isfinite(v)) throw invalid_argument("fit_marginal: data must be finite");
  }
  std::sort(m.sorted_.begin(), m.sorted_.end());

  double log_excess = 0.0;
  const auto first = std::upper_bound(m.sorted_.begin(), m.sorted_.end(), u_M);
  for (auto it = first; it != m.sorted_.end(); ++it) log_excess += std::log(*it / u_M);
  const auto n_u = static_cast<std::size_t>(m.sorted_.end() - first);
  if (n_u < 2) {
    throw InsufficientDataError("fit_marginal: fewer than 2 exceedances of u_M", n_u);
  }
  if (n_u == m.sorted_.size()) {
    throw invalid_argument("fit_marginal: u_M lies below the whole sample");
  }
  m.u_ = u_M;
  m.n_u_ = n_u;
  // Hill estimator: reciprocal mean log-excess.
  m.c_ = static_cast<double>(n_u) / log_excess;
  m.d_ = static_cast<double>(n_u) / static_cast<double>(m.sorted_.size());
  m.build_knots();
  return m;
}

MarginalModel MarginalModel::from_parts(std::vector<double> sample, double u_M, double c,
                                        double d) {
  if (!(u_M > 0.0) || !(c > 0.0) || !(d > 0.0 && d < 1.0)) {
    throw invalid_argument("marginal model: require u_M > 0, c > 0, 0 < d < 1");
  }
  MarginalModel m;
  m.sorted_ = std::move(sample);
  std::sort(m.sorted_.begin(), m.sorted_.end());
  if (m.sorted_.empty()) throw InsufficientDataError("marginal model: empty sample", 0);
  m.u_ = u_M;
  m.c_ = c;
  m.d_ = d;
  m.n_u_ = static_cast<std::size_t>(
      m.sorted_.end() - std::upper_bound(m.sorted_.begin(), m.sorted_.end(), u_M));
  m.build_knots();
  return m;
}

void MarginalModel::build_knots() {
  const auto n = static_cast<double>(sorted_.size());
  const double y_min = sorted_.front();
  const double anchor = y_min > 0.0 ? 0.0 : y_min - (u_ - y_min);
  knot_y_ = {anchor};
  knot_f_ = {0.0};
  for (std::size_t i = 0; i < sorted_.size() && sorted_[i] < u_; ++i) {
    // Top of the jump at each distinct value.
    if (i + 1 < sorted_.size() && sorted_[i + 1] == sorted_[i]) continue;
    knot_y_.push_back(sorted_[i]);
    knot_f_.push_back(static_cast<double>(i + 1) / (n + 1.0));
  }
  knot_y_.push_back(u_);
  knot_f_.push_back(1.0 - d_);
}

double MarginalModel::survival(double y) const {
  if (y >= u_) return d_ * std::pow(u_ / y, c_);
  return 1.0 - cdf(y);
}

double MarginalModel::cdf(double y) const {
  if (std::isnan(y)) throw invalid_argument("cdf: NaN argument");
  if (y >= u_) return 1.0 - d_ * std::pow(u_ / y, c_);
  if (y <= knot_y_.front()) return 0.0;
  const auto it = std::upper_bound(knot_y_.begin(), knot_y_.end(), y);
  const auto hi = static_cast<std::size_t>(it - knot_y_.begin());
  const std::size_t lo = hi - 1;
  const double w = (y - knot_y_[lo]) / (knot_y_[hi] - knot_y_[lo]);
  return knot_f_[lo] + w * (knot_f_[hi] - knot_f_[lo]);
}

double MarginalModel::body_inverse(double prob) const {
  if (prob >= knot_f_.back()) return u_;
  const auto it = std::upper_bound(knot_f_.begin(), knot_f_.end(), prob);
  const auto hi = static_cast<std::size_t>(it - knot_f_.begin());
  const std::size_t lo = hi - 1;
  const double w = (prob - knot_f_[lo]) / (knot_f_[hi] - knot_f_[lo]);
  return knot_y_[lo] + w * (knot_y_[hi] - knot_y_[lo]);
}

double MarginalModel::quantile(double prob) const {
  if (!(prob > 0.0 && prob < 1.0)) throw invalid_argument("quantile: prob must lie in (0,1)");
  const double s = 1.0 - prob;
  if (s <= d_) return u_ * std::pow(d_ / s, 1.0 / c_);
  return body_inverse(prob);
}

double MarginalModel::to_frechet(double y) const {
  double log_f;
  if (y >= u_) {
    const double s = d_ * std::pow(u_ / y, c_);
    if (!(s > 0.0)) throw invalid_argument("to_frechet: F(y) = 1, transform undefined");
    log_f = std::log1p(-s);
  } else {
    const double f = cdf(y);
    if (!(f > 0.0)) throw invalid_argument("to_frechet: F(y) = 0, y is below the model support");
    log_f = std::log(f);
  }
  return -1.0 / log_f;
}

double MarginalModel::from_frechet(double x) const {
  if (!(x > 0.0)) throw invalid_argument("from_frechet: x must be positive");
  const double s = -std::expm1(-1.0 / x);  // 1 - F
  if (s <= d_) {
    if (!(s > 0.0)) throw invalid_argument("from_frechet: F = 1, quantile is infinite");
    return u_ * std::pow(d_ / s, 1.0 / c_);
  }
  return body_inverse(std::exp(-1.0 / x));
}

std::vector<double> MarginalModel::to_frechet(std::span<const double> ys) const {
  std::vector<double> out(ys.size());
  std::transform(ys.begin(), ys.end(), out.begin(), [this](double y) { return to_frechet(y); });
  return out;
}

std::vector<double> MarginalModel::from_frechet(std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  std::transform(xs.begin(), xs.end(), out.begin(), [this](double x) { return from_frechet(x); });
  return out;
}

std::vector<QqPoint> qq_data(const MarginalModel& model, std::span<const double> data,
                             const QqOptions& opt) {
  const double u = model.threshold();
  std::vector<double> exc;
  for (double y : data) {
    if (y > u) exc.push_back(y);
  }
  if (exc.size() < 5) throw InsufficientDataError("qq_data: fewer than 5 exceedances", exc.size());
  std::sort(exc.begin(), exc.end());
  const std::size_t m = exc.size();
  const double c = model.tail_index();
  auto gumbel = [&](double y) { return std::log(model.to_frechet(y)); };

  std::vector<QqPoint> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double pos = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
    out[i].model = gumbel(u * std::pow(1.0 - pos, -1.0 / c));
    out[i].empirical = gumbel(exc[i]);
  }

  if (opt.replicates == 0) {
    for (auto& pt : out) pt.lower = pt.upper = pt.model;
    return out;
  }
  // sims[i * R + r]: i-th order statistic of replicate r.
  const std::size_t R = opt.replicates;
  std::vector<double> sims(m * R);
  std::vector<double> draw(m);
  for (std::size_t r = 0; r < R; ++r) {
    Rng rng = Rng::derive(opt.seed, r);
    for (auto& v : draw) v = u * std::pow(rng.uniform(), -1.0 / c);
    std::sort(draw.begin(), draw.end());
    for (std::size_t i = 0; i < m; ++i) sims[i * R + r] = gumbel(draw[i]);
  }
  const double a = 1.0 - opt.confidence;
  for (std::size_t i = 0; i < m; ++i) {
    auto first = sims.begin() + static_cast<std::ptrdiff_t>(i * R);
    std::sort(first, first + static_cast<std::ptrdiff_t>(R));
    auto pick = [&](double prob) {
      const auto k = std::min(R - 1, static_cast<std::size_t>(std::floor(prob * static_cast<double>(R - 1) + 0.5)));
      return *(first + static_cast<std::ptrdiff_t>(k));
    };
    out[i].lower = pick(a / 2.0);
    out[i].upper = pick(1.0 - a / 2.0);
  }
  return out;
}

}  // namespace maxarma
