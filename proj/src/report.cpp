#include "magres/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "magres/errors.hpp"

namespace magres {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 14);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string csv_field(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw Error("table row has " + std::to_string(row.size()) + " cells, expected " +
                                                std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out;
  for (const auto& line : preamble) out += "# " + line + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
    out += "\n";
  }
  for (const auto& line : trailer) out += "# " + line + "\n";
  return out;
}

std::string Table::to_json() const {
  nlohmann::ordered_json doc;
  doc["columns"] = columns;
  auto rows_json = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (const auto* i = std::get_if<std::int64_t>(&c)) r.push_back(*i);
      else if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) r.push_back(nlohmann::ordered_json::parse(format_double(*d)));
        else r.push_back(format_double(*d));
      } else r.push_back(std::get<std::string>(c));
    }
    rows_json.push_back(r);
  }
  doc["rows"] = rows_json;
  auto notes = preamble;
  notes.insert(notes.end(), trailer.begin(), trailer.end());
  doc["notes"] = notes;
  return doc.dump(2) + "\n";
}

}  // namespace magres
