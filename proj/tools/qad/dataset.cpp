#include "dataset.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace robust::cli {

namespace {

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

double parse_value(const std::string& token, const std::string& context) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw std::runtime_error(context + ": malformed number '" + token + "'");
  }
  if (consumed != token.size() || !std::isfinite(value)) {
    throw std::runtime_error(context + ": malformed number '" + token + "'");
  }
  return value;
}

InputDataset read_stream(std::istream& in, const std::string& source) {
  InputDataset dataset;
  dataset.source = source;
  std::string line;
  while (std::getline(in, line)) {
    if (is_blank(line)) {
      ++dataset.skipped_missing;
      continue;
    }
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      if (token == "NA") {
        ++dataset.skipped_missing;
        continue;
      }
      dataset.values.push_back(parse_value(token, source));
    }
  }
  return dataset;
}

}  // namespace

InputDataset read_dataset(const std::string& path) {
  if (path == "-") {
    return read_stream(std::cin, "stdin");
  }
  std::ifstream file(path);
  if (!file) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  return read_stream(file, path);
}

std::vector<int> parse_n_list(const std::string& spec) {
  std::vector<int> result;
  std::istringstream pieces(spec);
  std::string piece;
  while (std::getline(pieces, piece, ',')) {
    if (piece.empty()) continue;
    const auto dots = piece.find("..");
    try {
      if (dots == std::string::npos) {
        result.push_back(std::stoi(piece));
      } else {
        const int lo = std::stoi(piece.substr(0, dots));
        const int hi = std::stoi(piece.substr(dots + 2));
        if (hi < lo) throw std::runtime_error("descending range");
        for (int n = lo; n <= hi; ++n) result.push_back(n);
      }
    } catch (const std::exception&) {
      throw std::runtime_error("invalid n-list entry '" + piece + "'");
    }
  }
  if (result.empty()) {
    throw std::runtime_error("empty n-list '" + spec + "'");
  }
  return result;
}

std::vector<double> parse_p_grid(const std::string& spec) {
  std::vector<double> result;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const auto colon = spec.find(':', dots);
    if (colon == std::string::npos) {
      throw std::runtime_error("p-grid range needs a point count, e.g. 0.01..0.99:99");
    }
    double lo = 0, hi = 0;
    long count = 0;
    try {
      lo = std::stod(spec.substr(0, dots));
      hi = std::stod(spec.substr(dots + 2, colon - dots - 2));
      count = std::stol(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw std::runtime_error("invalid p-grid '" + spec + "'");
    }
    if (count < 1 || hi < lo) {
      throw std::runtime_error("invalid p-grid '" + spec + "'");
    }
    if (count == 1) {
      result.push_back(lo);
    } else {
      for (long i = 0; i < count; ++i) {
        result.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
      }
    }
  } else {
    std::istringstream pieces(spec);
    std::string piece;
    while (std::getline(pieces, piece, ',')) {
      if (piece.empty()) continue;
      result.push_back(parse_value(piece, "p-grid"));
    }
  }
  if (result.empty()) {
    throw std::runtime_error("empty p-grid '" + spec + "'");
  }
  for (double p : result) {
    if (!(p > 0.0 && p < 1.0)) {
      throw std::runtime_error("p-grid values must lie strictly inside (0, 1)");
    }
  }
  return result;
}

}  // namespace robust::cli
