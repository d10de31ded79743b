#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace tunclock {

/// Empty, numeric or text table cell.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class OutputFormat { csv, json };

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double v);

/// RFC-4180 quoting, one header line, '\n' line ends.
void write_csv(std::ostream& os, const Table& table);
/// Array of row objects keyed by column name; empty cells become null.
void write_json(std::ostream& os, const Table& table);
void write_table(std::ostream& os, const Table& table, OutputFormat format);

}  // namespace tunclock
