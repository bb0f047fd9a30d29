#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace robust::cli {

// Parsed numeric input: whitespace/newline-separated tokens; "NA" tokens
// (case-sensitive) and empty lines are counted as missing and dropped.
struct InputDataset {
  std::string source;
  std::vector<double> values;
  std::size_t skipped_missing = 0;
};

// Reads from the given path, or from standard input when the path is "-".
// Throws std::runtime_error on unreadable files or malformed tokens.
InputDataset read_dataset(const std::string& path);

// Integer list spec: comma-separated entries, each a value or an inclusive
// range "a..b" (e.g. "2,5..8,100" -> 2,5,6,7,8,100).
std::vector<int> parse_n_list(const std::string& spec);

// Probability grid spec: either a comma-separated list of values or
// "lo..hi:count" for `count` equally spaced points including both ends.
std::vector<double> parse_p_grid(const std::string& spec);

}  // namespace robust::cli
