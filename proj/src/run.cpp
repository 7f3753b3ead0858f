#include "rkg/run.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rkg/decimal.hpp"
#include "rkg/errors.hpp"
#include "rkg/kernels.hpp"
#include "rkg/polynomials.hpp"

#ifndef RKG_VERSION
#define RKG_VERSION "0.0.0"
#endif

namespace rkg {

using nlohmann::json;

namespace {

constexpr std::string_view kSubcommands[] = {"exact", "poly", "bruteforce", "mc", "sweep", "sample"};

std::int64_t need(const std::optional<std::int64_t>& v, const char* flag, const std::string& sub) {
  if (!v) throw UsageError(sub + " requires --" + flag);
  return *v;
}

std::int64_t parse_int(std::string_view text, const char* what) {
  const std::string s(text);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError(std::string("malformed ") + what + ": '" + s + "'");
  return v;
}

double parse_real(std::string_view text, const char* what) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError(std::string("malformed ") + what + ": '" + s + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

json opt_json(const std::optional<std::int64_t>& v) { return v ? json(*v) : json(nullptr); }

std::optional<std::int64_t> opt_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::int64_t>();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

ExperimentRecord base_record(const RunConfig& c, std::optional<std::int64_t> n,
                             std::optional<std::int64_t> K, std::optional<std::int64_t> P) {
  ExperimentRecord r;
  r.run_id = c.run_id();
  r.subcommand = c.subcommand;
  r.n = n;
  r.K = K;
  r.P = P;
  return r;
}

// --- exact -------------------------------------------------------------------

RunOutcome run_exact(const RunConfig& c) {
  const KeyParams theta(need(c.K, "K", c.subcommand), need(c.P, "P", c.subcommand));
  const std::int64_t n = need(c.n, "n", c.subcommand);
  const TriangleMoments m = triangle_moments(n, theta);
  const PairEventProbs pair = pair_event_probs(theta);

  ExperimentRecord r = base_record(c, n, theta.K(), theta.P());
  r.exact("q", q_theta(theta))
      .exact("r", r_theta(theta))
      .exact("beta", beta_theta(theta))
      .exact("tau", tau_theta(theta))
      .exact("p_both_shared", pair.both_shared)
      .exact("p_one_shared", pair.one_shared)
      .exact("p_none_shared", pair.none_shared);
  const auto cs = c_all(theta);
  for (std::size_t k = 0; k < cs.size(); ++k) r.exact("c_" + std::to_string(k), cs[k]);
  r.exact("e_t", m.first).exact("e_t2", m.second).exact("cross", m.cross).exact("ratio", m.ratio);

  RunOutcome out;
  out.report.push_back("beta = " + to_string(beta_theta(theta)) + ", E[T] = " + to_string(m.first) +
                       ", E[T^2] = " + to_string(m.second));
  out.records.push_back(std::move(r));
  return out;
}

// --- poly --------------------------------------------------------------------

RunOutcome run_poly(const RunConfig& c) {
  const std::int64_t k_first = need(c.K, "K", c.subcommand);
  const std::int64_t k_last = c.K_last.value_or(k_first);
  if (k_first < 1 || k_last < k_first) throw UsageError("poly needs 1 <= K (and an ascending K range)");

  RunOutcome out;
  json per_k = json::array();
  for (std::int64_t K = k_first; K <= k_last; ++K) {
    const PolyInP poly = expand_coefficients(K);
    const auto bounds = verify_coefficient_bound(poly);
    std::vector<CoefficientCheck> closed;
    if (K >= 4) closed = verify_coefficient_closed_forms(K, K);

    bool bounds_ok = true;
    bool closed_ok = true;
    for (std::size_t l = 0; l < poly.coeffs.size(); ++l) {
      ExperimentRecord r = base_record(c, std::nullopt, K, std::nullopt);
      r.text("l", std::to_string(l))
          .exact("a", Rational(poly.coeffs[l]))
          .exact("bound", Rational(bounds[l].bound))
          .text("bound_check", bounds[l].pass ? "pass" : "fail");
      bounds_ok = bounds_ok && bounds[l].pass;
      if (l < closed.size()) {
        r.exact("closed_form", Rational(closed[l].closed_form))
            .text("closed_form_check", closed[l].match ? "matches closed form" : "MISMATCH");
        closed_ok = closed_ok && closed[l].match;
        if (!closed[l].match) {
          out.report.push_back("K=" + std::to_string(K) + " l=" + std::to_string(l) +
                               ": expansion " + closed[l].expanded.get_str() + " vs closed form " +
                               closed[l].closed_form.get_str());
        }
      } else {
        r.exact("closed_form", std::nullopt).text("closed_form_check", "");
      }
      out.records.push_back(std::move(r));
    }

    // Spot checks of F/G and of the expansion against F evaluated directly.
    json spots = json::array();
    for (const std::int64_t P : {3 * K, 3 * K + 1, 4 * K + 3, 10 * K, std::int64_t{100}}) {
      if (P < 3 * K) continue;
      const KeyParams theta(K, P);
      const Rational fg = verify_FG_identity(theta);
      const BigInt f = F_theta(theta);
      if (poly.evaluate(P) != f) {
        throw IdentityViolation("expanded polynomial disagrees with F at K=" + std::to_string(K) +
                                " P=" + std::to_string(P));
      }
      spots.push_back({{"P", P}, {"F_over_G", to_string(fg)}, {"F_bound_holds", verify_F_bound(theta)}});
    }
    per_k.push_back({{"K", K},
                     {"bound_all_pass", bounds_ok},
                     {"closed_forms_all_match", K >= 4 ? json(closed_ok) : json(nullptr)},
                     {"spot_checks", spots}});
    out.report.push_back("K=" + std::to_string(K) + ": bound " + (bounds_ok ? "pass" : "FAIL") +
                         (K >= 4 ? std::string(", closed forms ") + (closed_ok ? "match" : "MISMATCH")
                                 : std::string()) +
                         ", F/G identity and polynomial identity verified at " +
                         std::to_string(spots.size()) + " P values");
  }
  out.summary["poly"] = per_k;
  return out;
}

// --- bruteforce --------------------------------------------------------------

RunOutcome run_bruteforce(const RunConfig& c) {
  const KeyParams theta(need(c.K, "K", c.subcommand), need(c.P, "P", c.subcommand));
  const std::int64_t n = need(c.n, "n", c.subcommand);
  const BruteForceReport bf = brute_force_moments(n, theta, c.cap);
  const Rational first = first_moment(n, theta);
  const Rational second = second_moment(n, theta);
  if (bf.e_t != first || bf.e_t2 != second) {
    throw IdentityViolation("brute force disagrees with closed forms at n=" + std::to_string(n) +
                            " K=" + std::to_string(theta.K()) + " P=" + std::to_string(theta.P()) +
                            ": E[T] " + to_string(bf.e_t) + " vs " + to_string(first) + ", E[T^2] " +
                            to_string(bf.e_t2) + " vs " + to_string(second));
  }
  ExperimentRecord r = base_record(c, n, theta.K(), theta.P());
  r.exact("assignments", Rational(bf.assignments_enumerated))
      .exact("p_triangle", bf.p_triangle)
      .exact("e_t", bf.e_t)
      .exact("e_t2", bf.e_t2)
      .exact("e_t_formula", first)
      .exact("e_t2_formula", second)
      .text("oracle_match", "exact");
  RunOutcome out;
  out.report.push_back("enumerated " + bf.assignments_enumerated.get_str() +
                       " assignments: P[T>0] = " + to_string(bf.p_triangle) + ", E[T] = " +
                       to_string(bf.e_t) + ", E[T^2] = " + to_string(bf.e_t2) + " (closed forms agree)");
  out.records.push_back(std::move(r));
  return out;
}

// --- mc ----------------------------------------------------------------------

RunOutcome run_mc(const RunConfig& c) {
  const KeyParams theta(need(c.K, "K", c.subcommand), need(c.P, "P", c.subcommand));
  const std::int64_t n = need(c.n, "n", c.subcommand);
  if (n < 3) throw UsageError("mc needs n >= 3");
  const MonteCarloResult mc = monte_carlo(n, theta, c.trials, c.seed);
  const Rational first = first_moment(n, theta);
  const Rational second = second_moment(n, theta);

  ExperimentRecord r = base_record(c, n, theta.K(), theta.P());
  r.text("trials", std::to_string(c.trials))
      .text("seed", std::to_string(c.seed))
      .estimate("p_triangle", mc.p_triangle)
      .estimate("e_t", mc.e_t)
      .estimate("e_t2", mc.e_t2)
      .exact("e_t_exact", first)
      .exact("e_t2_exact", second)
      .text("e_t_covered", yes_no(mc.e_t.covers(first.get_d())))
      .text("e_t2_covered", yes_no(mc.e_t2.covers(second.get_d())));
  RunOutcome out;
  out.report.push_back("P^[T>0] = " + format_double(mc.p_triangle.value) + " [" +
                       format_double(mc.p_triangle.ci_lo) + ", " + format_double(mc.p_triangle.ci_hi) +
                       "], E^[T] = " + format_double(mc.e_t.value) + " (exact " + to_decimal(first) + ")");
  out.records.push_back(std::move(r));
  return out;
}

// --- sweep -------------------------------------------------------------------

RunOutcome run_sweep(const RunConfig& c) {
  if (c.family.empty()) throw UsageError("sweep requires --family");
  const ScalingFamily family = find_family(c.family);
  const auto& grid = c.grid;

  std::optional<ZeroOneProbe> probe;
  if (c.trials > 0) probe = zero_one_probe(family, grid, c.trials, c.seed);
  const ConvergenceReport conv = convergence_diagnostics(family, grid, c.thresholds.ratio_tol);
  const auto er = er_comparison(family, grid);

  const auto diag_value = [&](std::size_t which, std::int64_t n) -> std::optional<Rational> {
    for (const auto& [m, v] : conv.diagnostics[which].values) {
      if (m == n) return v;
    }
    return std::nullopt;
  };

  RunOutcome out;
  out.plotdata = true;
  std::string direction;
  std::string trend;
  bool final_ok = false;
  if (probe) {
    direction = std::string(direction_name(probe->expected));
    trend = probe->trend.consistent ? "consistent" : "inconsistent";
    const double last = probe->points.back().mc.p_triangle.value;
    final_ok = probe->expected == Direction::decreasing ? last <= c.thresholds.prob_low
                                                        : last >= c.thresholds.prob_high;
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::int64_t n = grid[i];
    const auto& e = er[i];
    ExperimentRecord r = base_record(c, n, e.theta.K(), e.theta.P());
    r.text("family", family.name)
        .exact("condition", condition_value(n, family))
        .exact("q", q_theta(e.theta))
        .exact("e_t", e.e_key_graph)
        .exact("e_t_er", e.e_er)
        .exact("er_ratio", e.ratio)
        .exact("er_predictor", e.predictor)
        .text("er_rel_dev", format_double(e.relative_deviation))
        .exact("edge_prob_ratio", diag_value(0, n))
        .exact("beta_tau_ratio", diag_value(1, n))
        .exact("r_q2_ratio", diag_value(2, n))
        .exact("n2_edge_prob", diag_value(3, n));
    if (probe) {
      const auto& mc = probe->points[i].mc;
      r.estimate("p_triangle", mc.p_triangle).estimate("e_t_mc", mc.e_t);
    } else {
      r.estimate("p_triangle", std::nullopt).estimate("e_t_mc", std::nullopt);
    }
    r.text("expected_direction", direction).text("trend", trend);
    out.records.push_back(std::move(r));
  }

  json diags = json::array();
  for (const auto& d : conv.diagnostics) {
    json skipped = json::array();
    for (const auto& [n, why] : d.skipped) skipped.push_back({{"n", n}, {"reason", why}});
    diags.push_back({{"quantity", d.quantity},
                     {"target", d.target == Target::one ? "1" : "infinity"},
                     {"monotone", d.monotone},
                     {"last", d.last ? json(*d.last) : json(nullptr)},
                     {"within_tolerance", d.target == Target::one ? json(d.within_tolerance) : json(nullptr)},
                     {"skipped", skipped}});
    out.report.push_back(d.quantity + ": " + (d.values.empty() ? "skipped" :
                         std::string("last ") + format_double(*d.last) + (d.monotone ? ", monotone" : ", not monotone")));
  }
  out.summary["convergence"] = diags;
  out.summary["k2_over_p_shrinking"] = conv.k2_over_p_shrinking;
  out.summary["er_last_relative_deviation"] = er.back().relative_deviation;
  if (probe) {
    out.summary["zero_one"] = {{"expected_direction", direction},
                               {"inversions", probe->trend.inversions},
                               {"trend_consistent", probe->trend.consistent},
                               {"final_p_triangle", probe->points.back().mc.p_triangle.value},
                               {"final_threshold_met", final_ok}};
    out.report.push_back("P^[T>0] " + direction + " expected; trend " + trend + ", final " +
                         format_double(probe->points.back().mc.p_triangle.value) +
                         (final_ok ? " (threshold met)" : " (threshold NOT met)"));
  }
  return out;
}

// --- sample ------------------------------------------------------------------

RunOutcome run_sample(const RunConfig& c) {
  const KeyParams theta(need(c.K, "K", c.subcommand), need(c.P, "P", c.subcommand));
  const std::int64_t n = need(c.n, "n", c.subcommand);
  const KeyGraphSample g = sample_key_rings(n, theta, c.seed);
  std::ostringstream edges;
  write_edge_list(edges, g, c.seed);

  ExperimentRecord r = base_record(c, n, theta.K(), theta.P());
  r.text("seed", std::to_string(c.seed))
      .exact("edges", Rational(BigInt(static_cast<unsigned long>(g.adjacency.edge_count()))))
      .exact("triangles", Rational(BigInt(static_cast<unsigned long>(count_triangles(g)))));
  RunOutcome out;
  out.edge_list = edges.str();
  out.report.push_back(std::to_string(g.adjacency.edge_count()) + " edges, " +
                       std::to_string(count_triangles(g)) + " triangles");
  out.records.push_back(std::move(r));
  return out;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

json RunConfig::to_json() const {
  json g = json::array();
  for (const auto v : grid) g.push_back(v);
  return json{{"subcommand", subcommand},
              {"K", opt_json(K)},
              {"K_last", opt_json(K_last)},
              {"P", opt_json(P)},
              {"n", opt_json(n)},
              {"grid", g},
              {"family", family},
              {"trials", trials},
              {"seed", seed},
              {"cap", cap},
              {"thresholds",
               {{"prob_low", thresholds.prob_low},
                {"prob_high", thresholds.prob_high},
                {"ratio_tol", thresholds.ratio_tol}}}};
}

RunConfig RunConfig::from_json(const json& j) {
  try {
    RunConfig c;
    c.subcommand = j.at("subcommand").get<std::string>();
    if (std::find(std::begin(kSubcommands), std::end(kSubcommands), c.subcommand) ==
        std::end(kSubcommands)) {
      throw UsageError("unknown subcommand '" + c.subcommand + "'");
    }
    c.K = opt_from(j, "K");
    c.K_last = opt_from(j, "K_last");
    c.P = opt_from(j, "P");
    c.n = opt_from(j, "n");
    c.grid = j.at("grid").get<std::vector<std::int64_t>>();
    c.family = j.at("family").get<std::string>();
    c.trials = j.at("trials").get<std::uint64_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.cap = j.at("cap").get<std::uint64_t>();
    const auto& t = j.at("thresholds");
    c.thresholds = {t.at("prob_low").get<double>(), t.at("prob_high").get<double>(),
                    t.at("ratio_tol").get<double>()};
    return c;
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed run config: ") + e.what());
  }
}

std::string RunConfig::run_id() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : to_json().dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::int64_t> parse_grid(std::string_view text) {
  std::vector<std::int64_t> out;
  for (const auto part : split(text, ',')) out.push_back(parse_int(part, "grid entry"));
  return out;
}

std::pair<std::int64_t, std::int64_t> parse_k_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const auto k = parse_int(text, "K");
    return {k, k};
  }
  return {parse_int(text.substr(0, dots), "K range start"),
          parse_int(text.substr(dots + 2), "K range end")};
}

Thresholds parse_thresholds(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError("--thresholds expects low,high,ratio_tol");
  Thresholds t{parse_real(parts[0], "threshold"), parse_real(parts[1], "threshold"),
               parse_real(parts[2], "threshold")};
  if (!(0 <= t.prob_low && t.prob_low <= 1 && 0 <= t.prob_high && t.prob_high <= 1 && t.ratio_tol >= 0)) {
    throw UsageError("thresholds out of range");
  }
  return t;
}

RunOutcome execute(const RunConfig& config) {
  const auto& s = config.subcommand;
  if (s == "exact") return run_exact(config);
  if (s == "poly") return run_poly(config);
  if (s == "bruteforce") return run_bruteforce(config);
  if (s == "mc") return run_mc(config);
  if (s == "sweep") return run_sweep(config);
  if (s == "sample") return run_sample(config);
  throw UsageError("unknown subcommand '" + s + "'");
}

void persist(const RunConfig& config, const RunOutcome& outcome, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  json files = json::array();
  const auto write = [&](const char* name, const auto& emit) {
    std::ofstream f(out_dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + (out_dir / name).string());
    emit(f);
    files.push_back(name);
  };

  write("records.csv", [&](std::ostream& f) { write_records_csv(f, outcome.records); });
  if (outcome.plotdata) {
    write("plotdata.csv", [&](std::ostream& f) { write_plotdata_csv(f, outcome.records); });
  }
  if (!outcome.edge_list.empty()) {
    write("edges.txt", [&](std::ostream& f) { f << outcome.edge_list; });
  }

  files.push_back("manifest.json");
  const json manifest{{"run_id", config.run_id()},
                      {"artifact_version", RKG_VERSION},
                      {"created_utc", utc_now()},
                      {"kernel_backend", std::string(kernels::backend_name(kernels::active_backend()))},
                      {"config", config.to_json()},
                      {"files", files},
                      {"summary", outcome.summary}};
  std::ofstream f(out_dir / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + (out_dir / "manifest.json").string());
  f << manifest.dump(2) << '\n';
}

RunConfig load_manifest_config(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw UsageError("cannot read manifest " + manifest.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("malformed manifest " + manifest.string() + ": " + e.what());
  }
  if (!j.contains("config")) throw UsageError("manifest has no config: " + manifest.string());
  return RunConfig::from_json(j.at("config"));
}

ExitCode exit_code_for(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const FeasibilityError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return ExitCode::infeasible;
  } catch (const IdentityViolation& e) {
    std::cerr << "identity violation: " << e.what() << '\n';
    return ExitCode::identity_violation;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return ExitCode::usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ExitCode::usage;
  }
}

}  // namespace rkg
