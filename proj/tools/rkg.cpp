// rkg: exact moments, polynomial checks, brute force, Monte Carlo and sweeps
// for triangles in random key graphs.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rkg/errors.hpp"
#include "rkg/run.hpp"

namespace {

struct Flags {
  std::string K;
  std::optional<std::int64_t> P;
  std::optional<std::int64_t> n;
  std::string grid;
  std::string family;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> cap;
  std::string out;
  std::string thresholds;
  std::string manifest;
};

std::filesystem::path output_dir(const std::string& flag, const std::string& run_id) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("RKG_OUT_DIR"); env && *env) return std::filesystem::path(env) / run_id;
  return std::filesystem::path("runs") / run_id;
}

rkg::RunConfig to_config(const std::string& sub, const Flags& f) {
  rkg::RunConfig c;
  c.subcommand = sub;
  if (!f.K.empty()) {
    const auto [lo, hi] = rkg::parse_k_range(f.K);
    c.K = lo;
    if (hi != lo) c.K_last = hi;
    if (sub != "poly" && hi != lo) throw rkg::UsageError("a K range is only accepted by poly");
  }
  c.P = f.P;
  c.n = f.n;
  if (!f.grid.empty()) c.grid = rkg::parse_grid(f.grid);
  c.family = f.family;
  if (f.trials) c.trials = *f.trials;
  c.seed = f.seed;
  if (f.cap) c.cap = *f.cap;
  if (!f.thresholds.empty()) c.thresholds = rkg::parse_thresholds(f.thresholds);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and simulated triangle statistics for random key graphs", "rkg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", RKG_VERSION);

  Flags flags;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", flags.out, "Output directory (default $RKG_OUT_DIR/<run_id> or runs/<run_id>)");
  };
  const auto add_theta = [&](CLI::App* sub) {
    sub->add_option("--K", flags.K, "Ring size")->required();
    sub->add_option("--P", flags.P, "Pool size")->required();
  };

  auto* exact = app.add_subcommand("exact", "All closed-form quantities for one (K, P, n)");
  add_theta(exact);
  exact->add_option("--n", flags.n, "Number of nodes")->required();
  add_common(exact);

  auto* poly = app.add_subcommand("poly", "Coefficient table and identity checks for K or a range K1..K2");
  poly->add_option("--K", flags.K, "Ring size or range, e.g. 4..8")->required();
  add_common(poly);

  auto* brute = app.add_subcommand("bruteforce", "Exhaustive enumeration of key-ring assignments");
  add_theta(brute);
  brute->add_option("--n", flags.n, "Number of nodes")->required();
  brute->add_option("--cap", flags.cap, "Refuse when C(P,K)^n exceeds this");
  add_common(brute);

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimates with 99% confidence intervals");
  add_theta(mc);
  mc->add_option("--n", flags.n, "Number of nodes")->required();
  mc->add_option("--trials", flags.trials, "Number of sampled graphs");
  mc->add_option("--seed", flags.seed, "Master seed");
  add_common(mc);

  auto* sweep = app.add_subcommand("sweep", "Scaling-family sweep over an n-grid");
  sweep->add_option("--family", flags.family, "zero-regime, one-regime, dense, fixed-q, wsn-practical[:c], fixed:K:P")
      ->required();
  sweep->add_option("--grid", flags.grid, "Comma-separated n values");
  sweep->add_option("--trials", flags.trials, "Monte Carlo trials per grid point (0: exact only)");
  sweep->add_option("--seed", flags.seed, "Master seed");
  sweep->add_option("--thresholds", flags.thresholds, "low,high,ratio_tol");
  add_common(sweep);

  auto* sample = app.add_subcommand("sample", "Draw one key graph and write its edge list");
  add_theta(sample);
  sample->add_option("--n", flags.n, "Number of nodes")->required();
  sample->add_option("--seed", flags.seed, "Seed");
  add_common(sample);

  auto* rerun = app.add_subcommand("rerun", "Re-execute the config stored in a manifest.json");
  rerun->add_option("--manifest", flags.manifest, "Path to manifest.json")->required()->check(CLI::ExistingFile);
  add_common(rerun);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(rkg::ExitCode::usage);
  }

  try {
    const std::string sub = app.get_subcommands().front()->get_name();
    const rkg::RunConfig config =
        sub == "rerun" ? rkg::load_manifest_config(flags.manifest) : to_config(sub, flags);
    const rkg::RunOutcome outcome = rkg::execute(config);
    const auto dir = output_dir(flags.out, config.run_id());
    rkg::persist(config, outcome, dir);
    for (const auto& line : outcome.report) std::cout << line << '\n';
    std::cout << "wrote " << dir.string() << '\n';
    return static_cast<int>(rkg::ExitCode::ok);
  } catch (...) {
    return static_cast<int>(rkg::exit_code_for(std::current_exception()));
  }
}
