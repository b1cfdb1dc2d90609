#pragma once

// Bit-stable CSV / JSON emission. CSV and JSON are produced from the same
// Table so both carry the same numbers.

#include <json.hpp>

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace blowup::cli {

/// Shortest decimal string that reads back to the same double; "nan", "inf",
/// "-inf" for non-finite values. Falls back to 17 significant digits.
std::string format_number(double value);

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_cell(const Cell& cell);

/// Header row then data rows. Fields containing ',' or '"' are quoted.
void write_csv(std::ostream& out, const Table& table);

/// '#'-prefixed lines.
void write_comment(std::ostream& out, const std::string& text);

/// Comment block: a title line, a header line and one line per row.
void write_comment_table(std::ostream& out, const std::string& title, const Table& table);

nlohmann::json cell_json(const Cell& cell);

/// Array of row objects keyed by column name.
nlohmann::json to_json(const Table& table);

/// {config_echo, results, flags}, two-space indented, trailing newline.
void write_json(std::ostream& out, const nlohmann::json& config_echo, const nlohmann::json& results,
                const nlohmann::json& flags);

} // namespace blowup::cli
