#pragma once

// Experiment rows and their CSV layouts.
//
// Every exact quantity `x` becomes three columns x_num, x_den, x_dec (the
// rational is authoritative, the decimal is derived); every Monte Carlo
// estimate `y` becomes y_est, y_ci_lo, y_ci_hi; text fields are one column.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rkg/exact.hpp"
#include "rkg/monte_carlo.hpp"

namespace rkg {

struct ExperimentRecord {
  enum class Kind { exact, estimate, text };

  struct Field {
    std::string name;
    Kind kind = Kind::text;
    std::optional<Rational> exact;     // empty cells when absent
    std::optional<Estimate> estimate;  // empty cells when absent
    std::string text;
  };

  std::string run_id;
  std::string subcommand;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> K;
  std::optional<std::int64_t> P;
  std::vector<Field> fields;

  ExperimentRecord& exact(std::string name, std::optional<Rational> value);
  ExperimentRecord& estimate(std::string name, std::optional<Estimate> value);
  ExperimentRecord& text(std::string name, std::string value);

  const Field* find(std::string_view name) const noexcept;
};

std::vector<std::string> csv_header(const ExperimentRecord& r);
std::vector<std::string> csv_cells(const ExperimentRecord& r);

/// Quotes a cell only when it contains a comma, quote or newline.
std::string csv_escape(const std::string& cell);

/// Header from the first record, one line per record. Throws UsageError if
/// the records do not share one column layout.
void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records);

/// Long format: run_id,n,quantity,value_num,value_den,value_dec,estimate,ci_lo,ci_hi
/// with one row per (record, exact-or-estimate field).
void write_plotdata_csv(std::ostream& out, std::span<const ExperimentRecord> records);

}  // namespace rkg
