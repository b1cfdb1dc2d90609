#include "cli/emit.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace blowup::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec == std::errc()) return std::string(buf, ptr);
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_row(std::ostream& out, const std::vector<std::string>& fields, const char* prefix) {
  out << prefix;
  for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_field(fields[i]);
  out << '\n';
}

std::vector<std::string> formatted(const std::vector<Cell>& row) {
  std::vector<std::string> out;
  out.reserve(row.size());
  for (const auto& cell : row) out.push_back(format_cell(cell));
  return out;
}

} // namespace

void write_csv(std::ostream& out, const Table& table) {
  write_row(out, table.columns, "");
  for (const auto& row : table.rows) write_row(out, formatted(row), "");
}

void write_comment(std::ostream& out, const std::string& text) { out << "# " << text << '\n'; }

void write_comment_table(std::ostream& out, const std::string& title, const Table& table) {
  write_comment(out, title);
  write_row(out, table.columns, "# ");
  for (const auto& row : table.rows) write_row(out, formatted(row), "# ");
}

nlohmann::json cell_json(const Cell& cell) {
  struct Visitor {
    nlohmann::json operator()(double v) const {
      // JSON has no inf / nan; keep the CSV spelling as a string.
      if (!std::isfinite(v)) return format_number(v);
      return v;
    }
    nlohmann::json operator()(long long v) const { return v; }
    nlohmann::json operator()(bool v) const { return v; }
    nlohmann::json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::json to_json(const Table& table) {
  auto rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

void write_json(std::ostream& out, const nlohmann::json& config_echo, const nlohmann::json& results,
                const nlohmann::json& flags) {
  nlohmann::json doc;
  doc["config_echo"] = config_echo;
  doc["results"] = results;
  doc["flags"] = flags;
  out << doc.dump(2) << '\n';
}

} // namespace blowup::cli
