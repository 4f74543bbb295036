#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace macrolens {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kConventionNote =
    "x=(a+a^dag)/sqrt(2), p=(a-a^dag)/(i*sqrt(2)), vacuum var_x=var_p=1/2; S(r)=exp[(r/2)(a^2-a^dag^2)], r>0 squeezes x";

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(std::string_view name);

/// Rectangular table of reals with an ordered metadata block.
struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Throws invalid-argument if the row width differs from the column count.
  void add_row(std::vector<double> row);
  void set_meta(std::string key, std::string value);
};

/// 12 significant digits, shortest form, negative zero printed as 0.
std::string format_number(double value);

/// `# key: value` lines, a header row, then comma-separated rows.
void write_csv(const ResultTable& table, std::ostream& out);
void write_json(const ResultTable& table, std::ostream& out);
void write_table(const ResultTable& table, OutputFormat format, std::ostream& out);

}  // namespace macrolens
