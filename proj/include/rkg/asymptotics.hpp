#pragma once

// Finite-n probes of the triangle zero-one law along scalings n -> (K_n, P_n):
// exact condition values, Monte Carlo trend checks, ratio diagnostics for the
// asymptotic equivalences, and the comparison against edge-matched
// Erdos-Renyi graphs.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rkg/exact.hpp"
#include "rkg/monte_carlo.hpp"

namespace rkg {

/// Finite-grid stand-ins for limit statements. Artifact choices, recorded in
/// every run manifest.
struct Thresholds {
  double prob_low = 0.05;   // P[T>0] at the last grid point, zero side
  double prob_high = 0.95;  // P[T>0] at the last grid point, one side
  double ratio_tol = 0.10;  // |ratio - 1| at the last grid point
};

struct ScalingFamily {
  std::string name;
  std::string description;  // the concrete rule, including any ceilings
  std::function<KeyParams(std::int64_t)> rule;

  /// theta_n. KeyParams enforces K_n <= P_n.
  KeyParams at(std::int64_t n) const { return rule(n); }
};

/// wsn-practical (c = 2), zero-regime, one-regime, dense, fixed-q.
std::vector<ScalingFamily> builtin_scalings();

/// K_n = ceil(c ln n), P_n = ceil(K_n^2 n / (c ln n)).
ScalingFamily wsn_practical(double c);
/// Constant theta.
ScalingFamily fixed_family(std::int64_t K, std::int64_t P);

/// Resolves a built-in name, "fixed:K:P" or "wsn-practical:c".
/// Throws UsageError for anything else.
ScalingFamily find_family(std::string_view text);

/// n^3 tau(theta_n). Throws UsageError for n < 3.
Rational condition_value(std::int64_t n, const ScalingFamily& family);

/// 1 - q(theta): the edge probability of the Erdos-Renyi graph matched exactly.
Rational matched_er_probability(const KeyParams& theta);

enum class Direction { decreasing, increasing };

std::string_view direction_name(Direction d) noexcept;

struct TrendCheck {
  std::size_t inversions = 0;          // consecutive steps against the direction
  std::size_t overlapping_inversions = 0;  // of those, steps whose CIs overlap
  bool consistent = false;             // inversions <= allowed, all overlapping
};

/// Whether point estimates move in `direction`, tolerating up to
/// `allowed_inversions` backwards steps whose confidence intervals overlap.
TrendCheck check_trend(std::span<const Estimate> points, Direction direction,
                       std::size_t allowed_inversions = 1);

struct ProbePoint {
  std::int64_t n = 0;
  KeyParams theta;
  Rational condition;     // n^3 tau
  Rational first_moment;  // E[T_n]
  MonteCarloResult mc;
};

struct ZeroOneProbe {
  std::vector<ProbePoint> points;
  Direction expected = Direction::decreasing;  // from the trend of n^3 tau
  TrendCheck trend;
};

/// Grid point n uses master seed derive_seed(master_seed, n).
/// Throws UsageError unless the grid is ascending with every n >= 3.
ZeroOneProbe zero_one_probe(const ScalingFamily& family, std::span<const std::int64_t> n_grid,
                            std::uint64_t trials, std::uint64_t master_seed);

enum class Target { one, infinity };

struct ConvergenceDiagnostic {
  std::string quantity;
  Target target = Target::one;
  std::vector<std::pair<std::int64_t, Rational>> values;
  std::vector<std::pair<std::int64_t, std::string>> skipped;  // n, reason
  bool monotone = false;  // |v-1| non-increasing (target one), strictly increasing (infinity)
  std::optional<double> last;
  bool within_tolerance = false;  // target one: |last - 1| <= tol
};

struct ConvergenceReport {
  std::vector<ConvergenceDiagnostic> diagnostics;
  bool k2_over_p_shrinking = false;  // K_n^2/P_n strictly decreasing over the grid
};

/// Exact sequences (1-q)/(K^2/P), beta/tau, (1-r/q^2)/(K^3/P^2) and n^2(1-q).
/// Points with q = 0 are skipped for every ratio; the r/q^2 ratio also skips
/// 3K > P where r = 0.
ConvergenceReport convergence_diagnostics(const ScalingFamily& family,
                                          std::span<const std::int64_t> n_grid,
                                          double ratio_tol = Thresholds{}.ratio_tol);

struct ErComparisonPoint {
  std::int64_t n = 0;
  KeyParams theta;
  Rational e_key_graph;    // C(n,3) beta
  Rational e_er;           // C(n,3) (1-q)^3
  Rational ratio;          // beta / (1-q)^3, always >= 1
  Rational predictor;      // 1 + P/K^3
  double relative_deviation = 0.0;  // ratio / predictor - 1
};

/// Throws IdentityViolation if any exact ratio falls below 1.
std::vector<ErComparisonPoint> er_comparison(const ScalingFamily& family,
                                             std::span<const std::int64_t> n_grid);

ErComparisonPoint er_comparison_at(std::int64_t n, const KeyParams& theta);

}  // namespace rkg
