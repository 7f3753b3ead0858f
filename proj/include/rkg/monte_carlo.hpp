#pragma once

#include <cstdint>
#include <vector>

#include "rkg/exact.hpp"
#include "rkg/graph.hpp"

namespace rkg {

/// Two-sided standard normal quantile at 99% confidence.
inline constexpr double kZ99 = 2.5758293035489004;

struct Estimate {
  double value = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;

  bool covers(double x) const noexcept { return ci_lo <= x && x <= ci_hi; }
};

/// Wilson score interval for a binomial proportion.
Estimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ99);

/// Sample mean with a normal-approximation interval from the sample variance.
Estimate mean_interval(std::span<const double> samples, double z = kZ99);

struct MonteCarloResult {
  std::int64_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t graphs_with_triangle = 0;
  Estimate p_triangle;  // P[T_n > 0]
  Estimate e_t;         // E[T_n]
  Estimate e_t2;        // E[T_n^2]
};

/// Triangle counts of `trials` independent random key graphs; trial i uses
/// the stream derive_seed(master_seed, i), so the result does not depend on
/// how trials are spread over threads. Throws UsageError for trials == 0.
std::vector<std::uint64_t> key_graph_triangle_counts(std::int64_t n, const KeyParams& theta,
                                                     std::uint64_t trials, std::uint64_t master_seed);

MonteCarloResult monte_carlo(std::int64_t n, const KeyParams& theta, std::uint64_t trials,
                             std::uint64_t master_seed);

/// Same estimates for Erdos-Renyi graphs G(n; p).
MonteCarloResult monte_carlo_er(std::int64_t n, const EdgeProbability& p, std::uint64_t trials,
                                std::uint64_t master_seed);

/// Aggregates per-trial triangle counts into estimates.
MonteCarloResult summarize_counts(std::int64_t n, std::uint64_t master_seed,
                                  std::span<const std::uint64_t> counts);

}  // namespace rkg
