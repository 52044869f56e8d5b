#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace maxarma {

struct SimplexOptions {
  std::size_t max_evaluations = 5000;  // per call, including restarts
  double x_tolerance = 1e-7;           // simplex diameter (inf-norm)
  double f_tolerance = 1e-12;          // spread of vertex values
  int max_restarts = 4;                // fresh simplices around the incumbent
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  int restarts = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead downhill simplex (reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2). The objective may return +infinity to reject a point. After
/// each convergence the search restarts from the best vertex with the
/// initial step sizes, until a restart brings no improvement or the budget
/// is spent. `step[k]` is the initial edge length along coordinate k.
SimplexResult nelder_mead(const Objective& f, std::vector<double> x0, std::span<const double> step,
                          const SimplexOptions& options = {});

}  // namespace maxarma
