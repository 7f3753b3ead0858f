#pragma once

// Run configuration, execution and persistence behind the `rkg` CLI.
//
// A RunConfig is the complete, serializable description of one run. The
// records it produces depend on nothing else, so re-executing a persisted
// config reproduces records.csv byte for byte.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rkg/asymptotics.hpp"
#include "rkg/graph.hpp"
#include "rkg/records.hpp"

namespace rkg {

/// Process exit codes.
enum class ExitCode : int { ok = 0, usage = 1, infeasible = 2, identity_violation = 3 };

struct RunConfig {
  std::string subcommand;  // exact | poly | bruteforce | mc | sweep | sample
  std::optional<std::int64_t> K;
  std::optional<std::int64_t> K_last;  // poly: inclusive upper end of a K range
  std::optional<std::int64_t> P;
  std::optional<std::int64_t> n;
  std::vector<std::int64_t> grid{20, 50, 100, 200, 500};
  std::string family;
  std::uint64_t trials = 2000;
  std::uint64_t seed = 0;
  std::uint64_t cap = kDefaultBruteForceCap;
  Thresholds thresholds;

  nlohmann::json to_json() const;
  /// Throws UsageError on unknown subcommands or malformed fields.
  static RunConfig from_json(const nlohmann::json& j);

  /// 16 hex digits of FNV-1a over the canonical JSON form.
  std::string run_id() const;
};

/// "20,50,100" -> {20, 50, 100}.
std::vector<std::int64_t> parse_grid(std::string_view text);
/// "4" -> {4, 4}; "4..8" -> {4, 8}.
std::pair<std::int64_t, std::int64_t> parse_k_range(std::string_view text);
/// "low,high,ratio_tol", e.g. "0.05,0.95,0.10".
Thresholds parse_thresholds(std::string_view text);

struct RunOutcome {
  std::vector<ExperimentRecord> records;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> report;  // human-readable lines for stdout
  bool plotdata = false;            // sweep: also write plotdata.csv
  std::string edge_list;            // sample: contents of edges.txt
};

/// Pure computation; no files are touched.
RunOutcome execute(const RunConfig& config);

/// Writes records.csv, manifest.json and, when applicable, plotdata.csv or
/// edges.txt into `out_dir` (created if needed). Output is serialized per run
/// directory; concurrent runs must use distinct directories.
void persist(const RunConfig& config, const RunOutcome& outcome,
             const std::filesystem::path& out_dir);

/// Reads the "config" object from a manifest.json written by persist().
RunConfig load_manifest_config(const std::filesystem::path& manifest);

/// Maps an in-flight exception to the CLI exit code, writing a message to stderr.
ExitCode exit_code_for(const std::exception_ptr& error);

}  // namespace rkg
