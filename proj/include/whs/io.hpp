#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "whs/autom.hpp"
#include "whs/opmat.hpp"

namespace whs::io {

/// A flat table with a header row, written as CSV.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

/// Shortest round-trip decimal form of a double.
std::string fmt(double v);
std::string fmt(std::size_t v);

std::string to_csv(const Table& t);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Columns n, m, re, im.
Table coeff_table_csv(const CoeffTable& t);
/// Columns row, col, re, im.
Table matrix_csv(const DenseMatrix& A);

}  // namespace whs::io
