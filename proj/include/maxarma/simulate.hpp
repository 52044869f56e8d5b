#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maxarma/params.hpp"
#include "maxarma/rng.hpp"

namespace maxarma {

inline constexpr std::size_t kDefaultBurnIn = 1000;
inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct SimulationConfig {
  Params params;
  std::size_t n = 0;
  std::size_t burn_in = kDefaultBurnIn;
  std::uint64_t seed = kDefaultSeed;
  bool keep_innovations = false;
};

/// A path on unit Frechet margins. When innovations are kept,
/// innovations[k] is the Z driving values[k].
struct SimulatedSeries {
  std::vector<double> values;
  std::vector<double> innovations;
  double innovation_scale = 0.0;
  /// First index of `values` produced by the recursion (earlier entries are
  /// independent unit Frechet initial values, only when burn_in < p).
  std::size_t first_recursive = 0;
  SimulationConfig config;
};

/// Inverse-CDF draws z = -scale / ln(u) from Frechet(scale).
std::vector<double> sample_frechet(double scale, std::size_t count, Rng& rng);

/// Smallest admissible burn-in, q - min(p,q).
[[nodiscard]] std::size_t minimum_burn_in(Order order);

/// Simulates burn_in + n steps and returns the last n. The first p values
/// are independent unit Frechet draws, after which the recursion runs on
/// Frechet(gamma) innovations. Deterministic in (config, seed).
SimulatedSeries simulate(const SimulationConfig& config);

/// Elementwise natural log (unit Frechet -> standard Gumbel scale).
std::vector<double> to_gumbel(std::span<const double> values);

}  // namespace maxarma
