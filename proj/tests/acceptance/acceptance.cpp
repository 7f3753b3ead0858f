// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rkg/asymptotics.hpp"
#include "rkg/decimal.hpp"
#include "rkg/exact.hpp"
#include "rkg/graph.hpp"
#include "rkg/monte_carlo.hpp"
#include "rkg/polynomials.hpp"
#include "rkg/rng.hpp"
#include "rkg/run.hpp"

using namespace rkg;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome ac1_oracle_equivalence() {
  int cases = 0;
  for (std::int64_t n : {3, 4})
    for (std::int64_t K : {1, 2})
      for (std::int64_t P = K; P <= 8; ++P) {
        BigInt assignments;
        mpz_pow_ui(assignments.get_mpz_t(), binom(P, K).get_mpz_t(), static_cast<unsigned long>(n));
        if (assignments > 10'000'000) continue;
        const KeyParams theta(K, P);
        const auto bf = brute_force_moments(n, theta);
        if (bf.e_t != first_moment(n, theta) || bf.e_t2 != second_moment(n, theta)) {
          return {false, "mismatch at n=" + std::to_string(n) + " K=" + std::to_string(K) +
                             " P=" + std::to_string(P)};
        }
        ++cases;
      }
  return {true, std::to_string(cases) + " (n,K,P) cases equal exactly"};
}

Outcome ac2_cross_moment() {
  const KeyParams theta(1, 4);
  const auto rings = all_rings(theta);
  std::uint64_t assignments = 0, both = 0;
  for (const auto& a : rings)
    for (const auto& b : rings)
      for (const auto& c : rings)
        for (const auto& d : rings) {
          ++assignments;
          const bool ab = rings_intersect(a, b);
          if (ab && rings_intersect(a, c) && rings_intersect(b, c) && rings_intersect(a, d) &&
              rings_intersect(b, d)) {
            ++both;
          }
        }
  const Rational enumerated = make_rational(both, assignments);
  const auto bf = brute_force_moments(4, theta);
  const bool ok = assignments == 256 && cross_moment(theta) == make_rational(1, 64) &&
                  enumerated == cross_moment(theta) && second_moment(4, theta) == make_rational(7, 16) &&
                  bf.e_t2 == make_rational(7, 16);
  return {ok, "cross=" + to_string(cross_moment(theta)) + " (enumerated " + to_string(enumerated) + " over " +
                  std::to_string(assignments) + "), E[T^2]=" + to_string(second_moment(4, theta))};
}

Outcome ac3_fg_identity() {
  int cases = 0;
  for (std::int64_t K = 1; K <= 10; ++K)
    for (std::int64_t P = 3 * K; P <= 100; ++P) {
      verify_FG_identity({K, P});  // throws IdentityViolation on mismatch
      ++cases;
    }
  return {true, std::to_string(cases) + " (K,P) pairs"};
}

Outcome ac4_closed_forms_and_bound() {
  const auto checks = verify_coefficient_closed_forms(4, 12);
  for (const auto& c : checks) {
    if (!c.match) return {false, "a_" + std::to_string(c.l) + " mismatch at K=" + std::to_string(c.K)};
  }
  int bounds = 0;
  for (std::int64_t K = 1; K <= 8; ++K)
    for (const auto& b : verify_coefficient_bound(K)) {
      if (!b.pass) return {false, "bound fails at K=" + std::to_string(K) + " l=" + std::to_string(b.l)};
      ++bounds;
    }
  return {true, std::to_string(checks.size()) + " closed-form checks, " + std::to_string(bounds) + " bound checks"};
}

Outcome ac5_polynomial_identity() {
  int cases = 0;
  for (std::int64_t K = 1; K <= 6; ++K) {
    const auto poly = expand_coefficients(K);
    for (const std::int64_t P : {3 * K, 3 * K + 1, 7 * K + 5, std::int64_t{100}, std::int64_t{200}}) {
      if (poly.evaluate(P) != F_theta({K, P})) {
        return {false, "mismatch at K=" + std::to_string(K) + " P=" + std::to_string(P)};
      }
      ++cases;
    }
  }
  return {true, std::to_string(cases) + " evaluations equal F"};
}

Outcome ac6_statistical_consistency() {
  const KeyParams theta(2, 30);
  const double exact = first_moment(25, theta).get_d();
  int covered = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    if (monte_carlo(25, theta, 10'000, derive_seed(20240601, s)).e_t.covers(exact)) ++covered;
  }
  return {covered >= 19, std::to_string(covered) + "/20 intervals cover E[T]=" + format_double(exact)};
}

Outcome ac7_zero_one_trend() {
  const std::vector<std::int64_t> grid{20, 50, 100, 200};
  const auto zero = zero_one_probe(find_family("zero-regime"), grid, 2000, 7);
  const auto one = zero_one_probe(find_family("one-regime"), grid, 2000, 7);
  const double z = zero.points.back().mc.p_triangle.value;
  const double o = one.points.back().mc.p_triangle.value;
  const bool ok = zero.expected == Direction::decreasing && zero.trend.consistent && z <= 0.05 &&
                  one.expected == Direction::increasing && one.trend.consistent && o >= 0.95;
  return {ok, "zero-regime final " + format_double(z) + " (inversions " + std::to_string(zero.trend.inversions) +
                  "), one-regime final " + format_double(o) + " (inversions " +
                  std::to_string(one.trend.inversions) + ")"};
}

Outcome ac8_er_comparison() {
  int tested = 0;
  for (std::int64_t K = 1; K <= 6; ++K)
    for (std::int64_t P = K; P <= 60; ++P) {
      er_comparison_at(100, {K, P});  // throws IdentityViolation when the ratio is below 1
      ++tested;
    }
  const std::vector<std::int64_t> grid{20, 50, 100, 200, 500};
  for (const auto& family : builtin_scalings()) {
    tested += static_cast<int>(er_comparison(family, grid).size());
  }
  const auto wsn = er_comparison_at(500, find_family("wsn-practical").at(500));
  const bool ok = std::abs(wsn.relative_deviation) <= 0.15;
  return {ok, std::to_string(tested) + " parameter sets with ratio >= 1; wsn-practical n=500 ratio " +
                  to_decimal(wsn.ratio, 6) + " vs " + to_decimal(wsn.predictor, 6) + " (" +
                  format_double(100 * wsn.relative_deviation) + "%)"};
}

Outcome ac9_convergence() {
  const std::vector<std::int64_t> grid{100, 1000, 10000};
  const auto rep = convergence_diagnostics(find_family("one-regime"), grid, 0.10);
  std::string detail;
  bool ok = true;
  for (const auto* name : {"edge_prob_ratio", "beta_tau_ratio", "r_q2_ratio"}) {
    const ConvergenceDiagnostic* d = nullptr;
    for (const auto& x : rep.diagnostics) {
      if (x.quantity == name) d = &x;
    }
    if (!d || d->values.size() != grid.size()) return {false, std::string(name) + " missing values"};
    ok = ok && d->monotone && d->within_tolerance;
    detail += std::string(detail.empty() ? "" : ", ") + name + " " + format_double(*d->last);
  }
  return {ok, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome ac10_reproducibility() {
  std::vector<RunConfig> configs;
  auto add = [&](const std::string& sub, const std::function<void(RunConfig&)>& set) {
    RunConfig c;
    c.subcommand = sub;
    set(c);
    configs.push_back(c);
  };
  add("exact", [](RunConfig& c) { c.K = 3; c.P = 40; c.n = 30; });
  add("poly", [](RunConfig& c) { c.K = 4; c.K_last = 6; });
  add("bruteforce", [](RunConfig& c) { c.K = 2; c.P = 6; c.n = 4; });
  add("mc", [](RunConfig& c) { c.K = 2; c.P = 30; c.n = 25; c.trials = 3000; c.seed = 11; });
  add("sweep", [](RunConfig& c) { c.family = "zero-regime"; c.grid = {20, 50, 100}; c.trials = 500; c.seed = 5; });
  add("sample", [](RunConfig& c) { c.K = 2; c.P = 20; c.n = 40; c.seed = 9; });

  const fs::path root = fs::temp_directory_path() / "rkg_acceptance_reruns";
  fs::remove_all(root);
  for (const auto& c : configs) {
    const fs::path first = root / (c.run_id() + "_a");
    const fs::path second = root / (c.run_id() + "_b");
    persist(c, execute(c), first);
    const RunConfig loaded = load_manifest_config(first / "manifest.json");
    persist(loaded, execute(loaded), second);
    if (slurp(first / "records.csv") != slurp(second / "records.csv")) {
      return {false, c.subcommand + " records.csv differs on rerun"};
    }
  }
  fs::remove_all(root);
  return {true, std::to_string(configs.size()) + " persisted configs rerun byte-identically"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"AC1 brute-force oracle equals exact moments", ac1_oracle_equivalence},
      {"AC2 cross moment and second moment spot values", ac2_cross_moment},
      {"AC3 F/G identity for K<=10, 3K<=P<=100", ac3_fg_identity},
      {"AC4 leading coefficient closed forms and coefficient bound", ac4_closed_forms_and_bound},
      {"AC5 expanded polynomial equals F", ac5_polynomial_identity},
      {"AC6 99% intervals cover E[T] across seeds", ac6_statistical_consistency},
      {"AC7 zero/one trend on the regime families", ac7_zero_one_trend},
      {"AC8 key graph vs Erdos-Renyi triangle ratio", ac8_er_comparison},
      {"AC9 convergence diagnostics along the one-regime family", ac9_convergence},
      {"AC10 persisted configs rerun byte-identically", ac10_reproducibility},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("[%s] %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
