#include "macrolens/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>

#include "macrolens/error.hpp"

namespace macrolens {

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw Error(ErrorKind::InvalidArgument, "unknown output format '" + std::string(name) + "' (expected csv or json)");
}

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorKind::InvalidArgument, "row has " + std::to_string(row.size()) + " values for " +
                                                std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

void ResultTable::set_meta(std::string key, std::string value) {
  for (auto& [k, v] : metadata) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  metadata.emplace_back(std::move(key), std::move(value));
}

std::string format_number(double value) {
  if (value == 0.0) return "0";
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_csv(const ResultTable& table, std::ostream& out) {
  for (const auto& [k, v] : table.metadata) out << "# " << k << ": " << v << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
    out << '\n';
  }
}

void write_json(const ResultTable& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.metadata) doc["metadata"][k] = v;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    // Round through the CSV text so both formats carry the same digits.
    for (double v : row) {
      if (std::isfinite(v)) r.push_back(std::strtod(format_number(v).c_str(), nullptr));
      else r.push_back(nullptr);
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

void write_table(const ResultTable& table, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Json) write_json(table, out);
  else write_csv(table, out);
}

}  // namespace macrolens
