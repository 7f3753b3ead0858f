#include "rkg/records.hpp"

#include <ostream>

#include "rkg/decimal.hpp"
#include "rkg/errors.hpp"

namespace rkg {

ExperimentRecord& ExperimentRecord::exact(std::string name, std::optional<Rational> value) {
  fields.push_back({std::move(name), Kind::exact, std::move(value), std::nullopt, {}});
  return *this;
}

ExperimentRecord& ExperimentRecord::estimate(std::string name, std::optional<Estimate> value) {
  fields.push_back({std::move(name), Kind::estimate, std::nullopt, value, {}});
  return *this;
}

ExperimentRecord& ExperimentRecord::text(std::string name, std::string value) {
  fields.push_back({std::move(name), Kind::text, std::nullopt, std::nullopt, std::move(value)});
  return *this;
}

const ExperimentRecord::Field* ExperimentRecord::find(std::string_view name) const noexcept {
  for (const auto& f : fields) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

namespace {

std::string opt_int(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : ""; }

void join_line(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(cells[i]);
  }
  out << '\n';
}

}  // namespace

std::vector<std::string> csv_header(const ExperimentRecord& r) {
  std::vector<std::string> h{"run_id", "subcommand", "n", "K", "P"};
  for (const auto& f : r.fields) {
    switch (f.kind) {
      case ExperimentRecord::Kind::exact:
        h.push_back(f.name + "_num");
        h.push_back(f.name + "_den");
        h.push_back(f.name + "_dec");
        break;
      case ExperimentRecord::Kind::estimate:
        h.push_back(f.name + "_est");
        h.push_back(f.name + "_ci_lo");
        h.push_back(f.name + "_ci_hi");
        break;
      case ExperimentRecord::Kind::text:
        h.push_back(f.name);
        break;
    }
  }
  return h;
}

std::vector<std::string> csv_cells(const ExperimentRecord& r) {
  std::vector<std::string> c{r.run_id, r.subcommand, opt_int(r.n), opt_int(r.K), opt_int(r.P)};
  for (const auto& f : r.fields) {
    switch (f.kind) {
      case ExperimentRecord::Kind::exact:
        if (f.exact) {
          c.push_back(f.exact->get_num().get_str());
          c.push_back(f.exact->get_den().get_str());
          c.push_back(to_decimal(*f.exact));
        } else {
          c.insert(c.end(), 3, "");
        }
        break;
      case ExperimentRecord::Kind::estimate:
        if (f.estimate) {
          c.push_back(format_double(f.estimate->value));
          c.push_back(format_double(f.estimate->ci_lo));
          c.push_back(format_double(f.estimate->ci_hi));
        } else {
          c.insert(c.end(), 3, "");
        }
        break;
      case ExperimentRecord::Kind::text:
        c.push_back(f.text);
        break;
    }
  }
  return c;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (const char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records) {
  if (records.empty()) return;
  const auto header = csv_header(records.front());
  join_line(out, header);
  for (const auto& r : records) {
    if (csv_header(r) != header) {
      throw UsageError("records in one CSV must share a column layout (" + r.subcommand + ")");
    }
    join_line(out, csv_cells(r));
  }
}

void write_plotdata_csv(std::ostream& out, std::span<const ExperimentRecord> records) {
  join_line(out, {"run_id", "n", "quantity", "value_num", "value_den", "value_dec", "estimate",
                  "ci_lo", "ci_hi"});
  for (const auto& r : records) {
    for (const auto& f : r.fields) {
      if (f.kind == ExperimentRecord::Kind::text) continue;
      std::vector<std::string> row{r.run_id, opt_int(r.n), f.name};
      if (f.exact) {
        row.insert(row.end(), {f.exact->get_num().get_str(), f.exact->get_den().get_str(),
                               to_decimal(*f.exact)});
      } else {
        row.insert(row.end(), 3, "");
      }
      if (f.estimate) {
        row.insert(row.end(), {format_double(f.estimate->value), format_double(f.estimate->ci_lo),
                               format_double(f.estimate->ci_hi)});
      } else {
        row.insert(row.end(), 3, "");
      }
      join_line(out, row);
    }
  }
}

}  // namespace rkg
