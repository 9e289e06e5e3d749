#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace magres {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Rectangular result table with optional comment lines. CSV output is
/// locale independent: doubles in scientific notation with 15 significant
/// digits, "nan"/"inf" spelled out, comments as leading or trailing '#' lines.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> preamble;  // '# ' lines before the header
  std::vector<std::string> trailer;   // '# ' lines after the rows

  void add_row(std::vector<Cell> row);
  std::string to_csv() const;
  /// {"columns": [...], "rows": [[...]], "notes": [...]} with the same number
  /// formatting as the CSV (numbers as JSON numbers, non-finite as strings).
  std::string to_json() const;
};

/// "%.14e" through std::to_chars.
std::string format_double(double v);

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace magres
