#include "rkg/asymptotics.hpp"

#include <cmath>
#include <sstream>

#include "rkg/errors.hpp"

namespace rkg {

namespace {

BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

std::int64_t ceil_to_int(long double x) { return static_cast<std::int64_t>(std::ceil(x)); }

void require_grid(std::span<const std::int64_t> grid) {
  if (grid.empty()) throw UsageError("n-grid must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 3) throw UsageError("every grid point needs n >= 3");
    if (i > 0 && grid[i] <= grid[i - 1]) throw UsageError("n-grid must be strictly ascending");
  }
}

std::string format_c(double c) {
  std::ostringstream s;
  s << c;
  return s.str();
}

}  // namespace

ScalingFamily wsn_practical(double c) {
  if (!(c > 0.0)) throw UsageError("wsn-practical needs c > 0");
  return {"wsn-practical", "K_n = ceil(" + format_c(c) + " ln n), P_n = ceil(K_n^2 n / (" +
                               format_c(c) + " ln n))",
          [c](std::int64_t n) {
            if (n < 2) throw UsageError("wsn-practical is defined for n >= 2");
            const long double scale = static_cast<long double>(c) * std::log(static_cast<long double>(n));
            const std::int64_t K = ceil_to_int(scale);
            const std::int64_t P =
                ceil_to_int(static_cast<long double>(K) * K * static_cast<long double>(n) / scale);
            return KeyParams(K, P);
          }};
}

ScalingFamily fixed_family(std::int64_t K, std::int64_t P) {
  const KeyParams theta(K, P);  // validate eagerly
  return {"fixed:" + std::to_string(K) + ":" + std::to_string(P),
          "K_n = " + std::to_string(K) + ", P_n = " + std::to_string(P),
          [theta](std::int64_t) { return theta; }};
}

std::vector<ScalingFamily> builtin_scalings() {
  std::vector<ScalingFamily> out;
  out.push_back(wsn_practical(2.0));
  out.push_back({"zero-regime", "K_n = 1, P_n = n^2",
                 [](std::int64_t n) { return KeyParams(1, n * n); }});
  out.push_back({"one-regime", "K_n = 1, P_n = ceil(n^(3/2) / ln n)", [](std::int64_t n) {
                   if (n < 2) throw UsageError("one-regime is defined for n >= 2");
                   const auto x = static_cast<long double>(n);
                   return KeyParams(1, ceil_to_int(std::pow(x, 1.5L) / std::log(x)));
                 }});
  out.push_back({"dense", "K_n = 2, P_n = 3 (P_n < 2K_n: complete graphs)",
                 [](std::int64_t) { return KeyParams(2, 3); }});
  auto fixed = fixed_family(2, 8);
  fixed.name = "fixed-q";
  fixed.description += " (q = 15/28 for every n)";
  out.push_back(std::move(fixed));
  return out;
}

ScalingFamily find_family(std::string_view text) {
  for (auto& f : builtin_scalings()) {
    if (f.name == text) return f;
  }
  const auto fail = [&] {
    return UsageError("unknown family '" + std::string(text) +
                      "' (expected wsn-practical, zero-regime, one-regime, dense, fixed-q, "
                      "fixed:K:P or wsn-practical:c)");
  };
  try {
    if (text.starts_with("fixed:")) {
      const std::string rest(text.substr(6));
      const auto colon = rest.find(':');
      if (colon == std::string::npos) throw fail();
      std::size_t used_k = 0;
      std::size_t used_p = 0;
      const std::string ks = rest.substr(0, colon);
      const std::string ps = rest.substr(colon + 1);
      const long long K = std::stoll(ks, &used_k);
      const long long P = std::stoll(ps, &used_p);
      if (used_k != ks.size() || used_p != ps.size()) throw fail();
      return fixed_family(K, P);
    }
    if (text.starts_with("wsn-practical:")) {
      const std::string cs(text.substr(14));
      std::size_t used = 0;
      const double c = std::stod(cs, &used);
      if (used != cs.size()) throw fail();
      auto f = wsn_practical(c);
      f.name = std::string(text);
      return f;
    }
  } catch (const std::logic_error&) {
    // stoll/stod failures and our own UsageError
  }
  throw fail();
}

Rational condition_value(std::int64_t n, const ScalingFamily& family) {
  if (n < 3) throw UsageError("condition value needs n >= 3");
  const BigInt nn = big(n);
  return Rational(nn * nn * nn) * tau_theta(family.at(n));
}

Rational matched_er_probability(const KeyParams& theta) { return 1 - q_theta(theta); }

std::string_view direction_name(Direction d) noexcept {
  return d == Direction::decreasing ? "decreasing" : "increasing";
}

TrendCheck check_trend(std::span<const Estimate> points, Direction direction,
                       std::size_t allowed_inversions) {
  TrendCheck t;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const Estimate& a = points[i - 1];
    const Estimate& b = points[i];
    const bool against =
        direction == Direction::decreasing ? b.value > a.value : b.value < a.value;
    if (!against) continue;
    ++t.inversions;
    if (a.ci_lo <= b.ci_hi && b.ci_lo <= a.ci_hi) ++t.overlapping_inversions;
  }
  t.consistent = t.inversions <= allowed_inversions && t.overlapping_inversions == t.inversions;
  return t;
}

ZeroOneProbe zero_one_probe(const ScalingFamily& family, std::span<const std::int64_t> n_grid,
                            std::uint64_t trials, std::uint64_t master_seed) {
  require_grid(n_grid);
  ZeroOneProbe probe;
  std::vector<Estimate> p_hat;
  for (const auto n : n_grid) {
    const KeyParams theta = family.at(n);
    ProbePoint pt{n, theta, condition_value(n, family), first_moment(n, theta),
                  monte_carlo(n, theta, trials, derive_seed(master_seed, static_cast<std::uint64_t>(n)))};
    p_hat.push_back(pt.mc.p_triangle);
    probe.points.push_back(std::move(pt));
  }
  probe.expected = probe.points.back().condition < probe.points.front().condition
                       ? Direction::decreasing
                       : Direction::increasing;
  probe.trend = check_trend(p_hat, probe.expected);
  return probe;
}

namespace {

void finish_toward_one(ConvergenceDiagnostic& d, const Rational& tol) {
  if (d.values.empty()) return;
  d.monotone = true;
  for (std::size_t i = 1; i < d.values.size(); ++i) {
    if (abs(d.values[i].second - 1) > abs(d.values[i - 1].second - 1)) d.monotone = false;
  }
  const Rational& last = d.values.back().second;
  d.last = last.get_d();
  d.within_tolerance = abs(last - 1) <= tol;
}

void finish_toward_infinity(ConvergenceDiagnostic& d) {
  if (d.values.empty()) return;
  d.monotone = true;
  for (std::size_t i = 1; i < d.values.size(); ++i) {
    if (d.values[i].second <= d.values[i - 1].second) d.monotone = false;
  }
  d.last = d.values.back().second.get_d();
}

}  // namespace

ConvergenceReport convergence_diagnostics(const ScalingFamily& family,
                                          std::span<const std::int64_t> n_grid, double ratio_tol) {
  require_grid(n_grid);
  ConvergenceDiagnostic edge{"edge_prob_ratio", Target::one, {}, {}, false, {}, false};
  ConvergenceDiagnostic beta_tau{"beta_tau_ratio", Target::one, {}, {}, false, {}, false};
  ConvergenceDiagnostic r_q2{"r_q2_ratio", Target::one, {}, {}, false, {}, false};
  ConvergenceDiagnostic n2_edge{"n2_edge_prob", Target::infinity, {}, {}, false, {}, false};

  ConvergenceReport report;
  report.k2_over_p_shrinking = true;
  std::optional<Rational> prev_k2p;

  for (const auto n : n_grid) {
    const KeyParams theta = family.at(n);
    const BigInt K = big(theta.K());
    const BigInt P = big(theta.P());
    const Rational q = q_theta(theta);
    const Rational k2p = make_rational(K * K, P);
    if (prev_k2p && !(k2p < *prev_k2p)) report.k2_over_p_shrinking = false;
    prev_k2p = k2p;

    n2_edge.values.emplace_back(n, Rational(big(n) * big(n)) * (1 - q));

    if (q == 0) {
      const std::string why = "q = 0 (P < 2K, complete graph)";
      edge.skipped.emplace_back(n, why);
      beta_tau.skipped.emplace_back(n, why);
      r_q2.skipped.emplace_back(n, why);
      continue;
    }
    edge.values.emplace_back(n, Rational((1 - q) / k2p));
    beta_tau.values.emplace_back(n, Rational(beta_theta(theta) / tau_theta(theta)));
    if (3 * theta.K() > theta.P()) {
      r_q2.skipped.emplace_back(n, "3K > P (r = 0)");
    } else {
      const Rational r = r_theta(theta);
      r_q2.values.emplace_back(n, Rational((1 - r / (q * q)) / make_rational(K * K * K, P * P)));
    }
  }

  const Rational tol(ratio_tol);
  finish_toward_one(edge, tol);
  finish_toward_one(beta_tau, tol);
  finish_toward_one(r_q2, tol);
  finish_toward_infinity(n2_edge);
  report.diagnostics = {std::move(edge), std::move(beta_tau), std::move(r_q2), std::move(n2_edge)};
  return report;
}

ErComparisonPoint er_comparison_at(std::int64_t n, const KeyParams& theta) {
  const Rational edge = matched_er_probability(theta);
  const Rational edge3 = edge * edge * edge;
  const Rational triples(binom(n, 3));
  const BigInt K = big(theta.K());
  ErComparisonPoint pt{n,
                       theta,
                       first_moment(n, theta),
                       Rational(triples * edge3),
                       Rational(beta_theta(theta) / edge3),
                       1 + make_rational(big(theta.P()), K * K * K),
                       0.0};
  if (pt.ratio < 1) {
    throw IdentityViolation("E[T] ratio against matched Erdos-Renyi fell below 1 at n=" +
                            std::to_string(n) + " K=" + std::to_string(theta.K()) +
                            " P=" + std::to_string(theta.P()));
  }
  pt.relative_deviation = Rational(pt.ratio / pt.predictor - 1).get_d();
  return pt;
}

std::vector<ErComparisonPoint> er_comparison(const ScalingFamily& family,
                                             std::span<const std::int64_t> n_grid) {
  require_grid(n_grid);
  std::vector<ErComparisonPoint> out;
  for (const auto n : n_grid) out.push_back(er_comparison_at(n, family.at(n)));
  return out;
}

}  // namespace rkg
