#include "maxarma/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "maxarma/error.hpp"

namespace maxarma {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

class Search {
 public:
  Search(const Objective& f, const SimplexOptions& opt) : f_(f), opt_(opt) {}

  double eval(const std::vector<double>& x) {
    ++evals_;
    const double v = f_(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  }

  bool budget_left() const { return evals_ < opt_.max_evaluations; }
  std::size_t evaluations() const { return evals_; }

  // One Nelder-Mead run from `start`; returns the best vertex.
  Vertex run(const Vertex& start, std::span<const double> step, bool& converged) {
    const std::size_t n = start.x.size();
    std::vector<Vertex> s;
    s.reserve(n + 1);
    s.push_back(start);
    for (std::size_t k = 0; k < n; ++k) {
      Vertex v{start.x, 0.0};
      v.x[k] += step[k];
      v.f = eval(v.x);
      if (!std::isfinite(v.f)) {
        v.x[k] = start.x[k] - step[k];
        v.f = eval(v.x);
      }
      s.push_back(std::move(v));
    }

    converged = false;
    std::vector<double> centroid(n), trial(n);
    auto along = [&](double t) {
      // centroid + t (centroid - worst)
      for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + t * (centroid[k] - s[n].x[k]);
      return Vertex{trial, eval(trial)};
    };

    while (budget_left()) {
      std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
      if (std::isfinite(s[n].f) && s[n].f - s[0].f <= opt_.f_tolerance && diameter(s) <= opt_.x_tolerance) {
        converged = true;
        break;
      }
      if (diameter(s) <= opt_.x_tolerance * 1e-3) {
        converged = true;
        break;
      }
      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) centroid[k] += s[i].x[k];
      }
      for (auto& c : centroid) c /= static_cast<double>(n);

      Vertex r = along(1.0);
      if (r.f < s[0].f) {
        Vertex e = along(2.0);
        s[n] = e.f < r.f ? std::move(e) : std::move(r);
        continue;
      }
      if (r.f < s[n - 1].f) {
        s[n] = std::move(r);
        continue;
      }
      // Outside contraction when the reflection beats the worst, inside otherwise.
      Vertex c = r.f < s[n].f ? along(0.5) : along(-0.5);
      if (c.f < std::min(r.f, s[n].f)) {
        s[n] = std::move(c);
        continue;
      }
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t k = 0; k < n; ++k) s[i].x[k] = s[0].x[k] + 0.5 * (s[i].x[k] - s[0].x[k]);
        s[i].f = eval(s[i].x);
      }
    }
    return *std::min_element(s.begin(), s.end(),
                             [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  }

 private:
  static double diameter(const std::vector<Vertex>& s) {
    double d = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      for (std::size_t k = 0; k < s[0].x.size(); ++k) d = std::max(d, std::abs(s[i].x[k] - s[0].x[k]));
    }
    return d;
  }

  const Objective& f_;
  const SimplexOptions& opt_;
  std::size_t evals_ = 0;
};

}  // namespace

SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, std::span<const double> step,
                          const SimplexOptions& options) {
  if (x0.empty() || step.size() != x0.size()) {
    throw invalid_argument("nelder_mead: start and step must be non-empty and equally sized");
  }
  Search search(f, options);
  Vertex best{std::move(x0), 0.0};
  best.f = search.eval(best.x);
  if (!std::isfinite(best.f)) throw Error(ErrorKind::Optimization, "nelder_mead: infeasible start");

  SimplexResult out;
  bool converged = false;
  best = search.run(best, step, converged);
  while (converged && out.restarts < options.max_restarts && search.budget_left()) {
    bool again = false;
    Vertex next = search.run(best, step, again);
    ++out.restarts;
    const bool improved = next.f < best.f - options.f_tolerance;
    if (next.f < best.f) best = std::move(next);
    converged = again;
    if (!improved) break;
  }
  out.x = std::move(best.x);
  out.value = best.f;
  out.evaluations = search.evaluations();
  out.converged = converged;
  return out;
}

}  // namespace maxarma
