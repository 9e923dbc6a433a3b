#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "qnd/errors.hpp"

namespace qnd::cli {

/// Shortest text that reads back to the same double, so reruns are byte-identical.
inline std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

class CsvTable {
 public:
  using Cell = std::variant<double, long long, std::string>;

  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<Cell> row) {
    if (row.size() != header_.size()) throw ValidationError("csv: row width does not match the header");
    rows_.push_back(std::move(row));
  }

  std::size_t rows() const noexcept { return rows_.size(); }

  void write(const std::filesystem::path& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ValidationError("cannot write " + path.string());
    write_line(os, header_);
    for (const auto& row : rows_) {
      std::vector<std::string> text;
      for (const Cell& c : row) text.push_back(render(c));
      write_line(os, text);
    }
  }

 private:
  static std::string render(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return format_number(*d);
    if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
  }

  static void write_line(std::ofstream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      const std::string& s = cells[i];
      if (s.find_first_of(",\"\n") != std::string::npos) {
        os << '"';
        for (char ch : s) os << (ch == '"' ? "\"\"" : std::string(1, ch));
        os << '"';
      } else {
        os << s;
      }
    }
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace qnd::cli
