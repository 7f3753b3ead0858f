#include "rkg/monte_carlo.hpp"

#include <cmath>

#include "parallel.hpp"
#include "rkg/errors.hpp"

namespace rkg {

Estimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw UsageError("Wilson interval needs at least one trial");
  const double nt = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double centre = (phat + z2 / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nt + z2 / (4.0 * nt * nt)) / denom;
  return {phat, std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

Estimate mean_interval(std::span<const double> samples, double z) {
  if (samples.empty()) throw UsageError("mean interval needs at least one sample");
  const auto count = static_cast<long double>(samples.size());
  long double sum = 0;
  for (const double x : samples) sum += x;
  const long double mean = sum / count;
  if (samples.size() == 1) {
    const auto m = static_cast<double>(mean);
    return {m, m, m};
  }
  long double ss = 0;
  for (const double x : samples) ss += (x - mean) * (x - mean);
  const long double se = std::sqrt(ss / (count - 1) / count);
  const auto m = static_cast<double>(mean);
  const auto half = static_cast<double>(z * se);
  return {m, m - half, m + half};
}

MonteCarloResult summarize_counts(std::int64_t n, std::uint64_t master_seed,
                                  std::span<const std::uint64_t> counts) {
  MonteCarloResult r;
  r.n = n;
  r.trials = counts.size();
  r.master_seed = master_seed;
  std::vector<double> t(counts.size());
  std::vector<double> t2(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    r.graphs_with_triangle += counts[i] > 0;
    t[i] = static_cast<double>(counts[i]);
    t2[i] = t[i] * t[i];
  }
  r.p_triangle = wilson_interval(r.graphs_with_triangle, r.trials);
  r.e_t = mean_interval(t);
  r.e_t2 = mean_interval(t2);
  return r;
}

namespace {

template <class CountOne>
std::vector<std::uint64_t> run_trials(std::uint64_t trials, std::uint64_t master_seed,
                                      CountOne count_one) {
  if (trials == 0) throw UsageError("Monte Carlo needs trials >= 1");
  std::vector<std::uint64_t> counts(trials);
  detail::parallel_chunks(trials, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) counts[i] = count_one(derive_seed(master_seed, i));
  });
  return counts;
}

}  // namespace

std::vector<std::uint64_t> key_graph_triangle_counts(std::int64_t n, const KeyParams& theta,
                                                     std::uint64_t trials,
                                                     std::uint64_t master_seed) {
  if (n < 1) throw UsageError("Monte Carlo needs n >= 1");
  return run_trials(trials, master_seed, [&](std::uint64_t seed) {
    return count_triangles(sample_key_rings(n, theta, seed));
  });
}

MonteCarloResult monte_carlo(std::int64_t n, const KeyParams& theta, std::uint64_t trials,
                             std::uint64_t master_seed) {
  const auto counts = key_graph_triangle_counts(n, theta, trials, master_seed);
  return summarize_counts(n, master_seed, counts);
}

MonteCarloResult monte_carlo_er(std::int64_t n, const EdgeProbability& p, std::uint64_t trials,
                                std::uint64_t master_seed) {
  if (n < 1) throw UsageError("Monte Carlo needs n >= 1");
  const auto counts = run_trials(trials, master_seed, [&](std::uint64_t seed) {
    return count_triangles(sample_er(n, p, seed));
  });
  return summarize_counts(n, master_seed, counts);
}

}  // namespace rkg
