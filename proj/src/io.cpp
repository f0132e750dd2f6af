#include "whs/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace whs::io {

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw std::invalid_argument("Table::add_row: width mismatch");
  rows.push_back(std::move(row));
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("fmt: conversion failed");
  return {buf, ptr};
}

std::string fmt(std::size_t v) { return std::to_string(v); }

std::string to_csv(const Table& t) {
  std::string out;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
      if (quote) {
        out += '"';
        for (char c : cells[i]) {
          if (c == '"') out += '"';
          out += c;
        }
        out += '"';
      } else {
        out += cells[i];
      }
    }
    out += '\n';
  };
  emit(t.header);
  for (const auto& r : t.rows) emit(r);
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
}

Table coeff_table_csv(const CoeffTable& t) {
  Table out{{"n", "m", "re", "im"}, {}};
  for (std::size_t n = 0; n <= t.nmax(); ++n)
    for (std::size_t m = 0; m <= t.mmax(); ++m) {
      const auto c = t.at(n, m);
      out.rows.push_back({fmt(n), fmt(m), fmt(c.real()), fmt(c.imag())});
    }
  return out;
}

Table matrix_csv(const DenseMatrix& A) {
  Table out{{"row", "col", "re", "im"}, {}};
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) {
      const auto c = A(i, j);
      out.rows.push_back({fmt(i), fmt(j), fmt(c.real()), fmt(c.imag())});
    }
  return out;
}

}  // namespace whs::io
