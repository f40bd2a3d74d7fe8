#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace qifstool {

enum class OutputFormat { Table, Json, Csv };

OutputFormat format_from_name(const std::string& name);

// One task's outcome. `results` and `residuals` hold named numbers, vectors,
// or matrices (nested arrays); sweep-style tasks fill the csv table instead.
struct Report {
  std::string task;
  std::uint64_t inputs_digest = 0;
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json residuals = nlohmann::json::object();
  long iterations = 0;
  std::optional<std::uint64_t> seed;

  std::vector<std::string> table_header;  // set for row-structured output
  std::vector<std::vector<double>> table_rows;
};

// Renders with every floating-point value at 12 significant digits.
void emit(const Report& report, OutputFormat format, std::ostream& out);

std::string format_double(double value);           // %.12g
std::uint64_t fnv1a(const std::string& bytes);     // 64-bit FNV-1a
std::string digest_hex(std::uint64_t digest);

}  // namespace qifstool
