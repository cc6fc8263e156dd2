#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace cpo {

/// One CSV cell: a number or a bare word such as "left".
using Cell = std::variant<double, std::string>;

/// Fixed-column table. Rows must have one cell per column.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// %.17g, or the literal tokens nan, inf, -inf. Parses back to the same double.
std::string format_double(double v);

/// Inverse of format_double; also accepts any strtod-style number.
double parse_double(std::string_view text);

std::string to_csv(const Table& table);

/// Cells that parse completely as numbers (including nan/inf) become doubles.
Table parse_csv(std::string_view text);

/// Writes atomically enough for our purposes: to path.tmp, then renamed.
void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

void write_csv(const std::filesystem::path& path, const Table& table);

/// Pretty-printed with sorted keys and a trailing newline. Non-finite numbers
/// are stored as the strings "nan", "inf", "-inf".
void write_json(const std::filesystem::path& path, const nlohmann::json& value);

/// JSON number, or its format_double token if non-finite.
nlohmann::json json_number(double v);

}  // namespace cpo
