#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace wormlab {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<double, long long, std::string>;

// Column-named rows, written as CSV with a header row and LF endings.
class Table {
 public:
  Table() = default;
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  size_t n_rows() const { return rows_.size(); }
  size_t n_cols() const { return columns_.size(); }
  int column_index(const std::string& name) const;  // -1 if absent

  std::string to_csv() const;
  void write_csv(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace wormlab
