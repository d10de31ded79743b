#include "tunclock/table.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "json.hpp"

namespace tunclock {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  return {};
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ',';
    os << csv_field(table.columns[i]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << csv_field(cell_text(row[i]));
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      const Cell& cell = i < row.size() ? row[i] : Cell{};
      if (const auto* d = std::get_if<double>(&cell)) {
        obj[table.columns[i]] = std::isfinite(*d) ? nlohmann::ordered_json(*d) : nlohmann::ordered_json(nullptr);
      } else if (const auto* s = std::get_if<std::string>(&cell)) {
        obj[table.columns[i]] = *s;
      } else {
        obj[table.columns[i]] = nullptr;
      }
    }
    out.push_back(std::move(obj));
  }
  os << out.dump(2) << '\n';
}

void write_table(std::ostream& os, const Table& table, OutputFormat format) {
  if (format == OutputFormat::json) {
    write_json(os, table);
  } else {
    write_csv(os, table);
  }
}

}  // namespace tunclock
