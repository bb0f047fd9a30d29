#include "output_table.hpp"

#include <charconv>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace robust::cli {

void OutputTable::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns.size()) {
    throw std::logic_error("OutputTable: ragged row");
  }
  rows.push_back(std::move(cells));
}

std::string format_number(double value, int digits) {
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, digits);
  if (ec != std::errc()) {
    throw std::runtime_error("format_number: conversion failed");
  }
  return std::string(buffer, ptr);
}

namespace {

void write_csv(const OutputTable& table, int digits, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ',';
      const Cell& cell = row[c];
      if (cell.is_number()) {
        out << format_number(cell.number(), digits);
      } else if (!cell.empty()) {
        out << cell.text();
      }
    }
    out << '\n';
  }
}

void write_json(const OutputTable& table, int digits, std::ostream& out) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      const Cell& cell = row[c];
      if (cell.is_number()) {
        // Round through the CSV rendering so both formats agree exactly.
        obj[table.columns[c]] = std::strtod(format_number(cell.number(), digits).c_str(), nullptr);
      } else if (cell.empty()) {
        obj[table.columns[c]] = nullptr;
      } else {
        obj[table.columns[c]] = cell.text();
      }
    }
    rows.push_back(std::move(obj));
  }
  out << rows.dump(2) << '\n';
}

}  // namespace

void write_table(const OutputTable& table, OutputFormat format, int digits, std::ostream& out) {
  if (format == OutputFormat::kCsv) {
    write_csv(table, digits, out);
  } else {
    write_json(table, digits, out);
  }
}

}  // namespace robust::cli
