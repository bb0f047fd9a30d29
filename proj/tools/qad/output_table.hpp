#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace robust::cli {

// One output cell: a number (formatted with the configured precision), a
// plain string, or empty.
class Cell {
 public:
  Cell() = default;
  Cell(double number) : kind_(Kind::kNumber), number_(number) {}  // NOLINT: implicit by design
  Cell(std::string text) : kind_(Kind::kText), text_(std::move(text)) {}
  Cell(const char* text) : Cell(std::string(text)) {}

  bool empty() const { return kind_ == Kind::kEmpty; }
  bool is_number() const { return kind_ == Kind::kNumber; }
  double number() const { return number_; }
  const std::string& text() const { return text_; }

 private:
  enum class Kind { kEmpty, kNumber, kText };
  Kind kind_ = Kind::kEmpty;
  double number_ = 0.0;
  std::string text_;
};

// Rectangular table with a header row; the only shape the CLI emits.
struct OutputTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> cells);
};

enum class OutputFormat { kCsv, kJson };

// %.<digits>g rendering via std::to_chars; locale-independent, '.' decimal.
std::string format_number(double value, int digits);

// CSV: header + rows, LF line endings. JSON: array of row objects keyed by
// column name; numbers are parsed back from the CSV rendering so both
// formats carry identical values.
void write_table(const OutputTable& table, OutputFormat format, int digits, std::ostream& out);

}  // namespace robust::cli
