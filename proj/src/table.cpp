#include "wormlab/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace wormlab {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::invalid_argument("table: row width does not match header");
  rows_.push_back(std::move(row));
}

int Table::column_index(const std::string& name) const {
  for (size_t k = 0; k < columns_.size(); ++k)
    if (columns_[k] == name) return static_cast<int>(k);
  return -1;
}

namespace {

std::string cell_text(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return format_double(*d);
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace

std::string Table::to_csv() const {
  std::string out;
  for (size_t k = 0; k < columns_.size(); ++k) out += (k ? "," : "") + columns_[k];
  out += "\n";
  for (const auto& row : rows_) {
    for (size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + cell_text(row[k]);
    out += "\n";
  }
  return out;
}

void Table::write_csv(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << to_csv();
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace wormlab
