#include "report.hpp"

#include <cstdio>
#include <cstdlib>

#include "qifs/errors.hpp"

namespace qifstool {

using nlohmann::json;

OutputFormat format_from_name(const std::string& name) {
  if (name == "table") return OutputFormat::Table;
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  throw qifs::Error(qifs::ErrorCode::BadInput,
                    "--out must be one of table, json, csv (got \"" + name + "\")");
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string digest_hex(std::uint64_t digest) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(digest));
  return buffer;
}

namespace {

// Round-trips a double through %.12g so JSON output carries 12 significant
// digits while staying numeric.
double round12(double value) {
  return std::strtod(format_double(value).c_str(), nullptr);
}

json rounded(const json& value) {
  if (value.is_number_float()) return round12(value.get<double>());
  if (value.is_array()) {
    json out = json::array();
    for (const auto& item : value) out.push_back(rounded(item));
    return out;
  }
  if (value.is_object()) {
    json out = json::object();
    for (const auto& item : value.items()) out[item.key()] = rounded(item.value());
    return out;
  }
  return value;
}

std::string flat_value(const json& value) {
  if (value.is_number_float()) return format_double(value.get<double>());
  if (value.is_number()) return value.dump();
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    std::string text = "[";
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (i) text += ", ";
      text += flat_value(value[i]);
    }
    return text + "]";
  }
  return value.dump();
}

void emit_pairs(const json& object, std::ostream& out, const char* indent) {
  for (const auto& item : object.items())
    out << indent << item.key() << ": " << flat_value(item.value()) << "\n";
}

void emit_table(const Report& report, std::ostream& out) {
  out << "task: " << report.task << "\n";
  out << "inputs_digest: " << digest_hex(report.inputs_digest) << "\n";
  if (report.seed) out << "seed: " << *report.seed << "\n";
  out << "iterations: " << report.iterations << "\n";
  if (!report.results.empty()) {
    out << "results:\n";
    emit_pairs(report.results, out, "  ");
  }
  if (!report.residuals.empty()) {
    out << "residuals:\n";
    emit_pairs(report.residuals, out, "  ");
  }
  if (!report.table_rows.empty()) {
    out << "rows:\n  ";
    for (std::size_t i = 0; i < report.table_header.size(); ++i) {
      if (i) out << "  ";
      out << report.table_header[i];
    }
    out << "\n";
    for (const auto& row : report.table_rows) {
      out << "  ";
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << "  ";
        out << format_double(row[i]);
      }
      out << "\n";
    }
  }
}

void emit_json(const Report& report, std::ostream& out) {
  json doc;
  doc["task"] = report.task;
  doc["inputs_digest"] = digest_hex(report.inputs_digest);
  doc["results"] = rounded(report.results);
  if (!report.table_rows.empty()) {
    json rows = json::array();
    for (const auto& row : report.table_rows) {
      json entry = json::object();
      for (std::size_t i = 0; i < row.size() && i < report.table_header.size(); ++i)
        entry[report.table_header[i]] = round12(row[i]);
      rows.push_back(std::move(entry));
    }
    doc["results"]["rows"] = std::move(rows);
  }
  doc["residuals"] = rounded(report.residuals);
  doc["iterations"] = report.iterations;
  doc["seed"] = report.seed ? json(*report.seed) : json(nullptr);
  out << doc.dump(2) << "\n";
}

void emit_csv(const Report& report, std::ostream& out) {
  if (!report.table_rows.empty()) {
    for (std::size_t i = 0; i < report.table_header.size(); ++i) {
      if (i) out << ",";
      out << report.table_header[i];
    }
    out << "\n";
    for (const auto& row : report.table_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ",";
        out << format_double(row[i]);
      }
      out << "\n";
    }
    return;
  }
  out << "key,value\n";
  out << "task," << report.task << "\n";
  out << "inputs_digest," << digest_hex(report.inputs_digest) << "\n";
  if (report.seed) out << "seed," << *report.seed << "\n";
  out << "iterations," << report.iterations << "\n";
  for (const auto& item : report.results.items())
    if (item.value().is_number())
      out << item.key() << "," << flat_value(item.value()) << "\n";
  for (const auto& item : report.residuals.items())
    if (item.value().is_number())
      out << item.key() << "," << flat_value(item.value()) << "\n";
}

}  // namespace

void emit(const Report& report, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::Table:
      emit_table(report, out);
      return;
    case OutputFormat::Json:
      emit_json(report, out);
      return;
    case OutputFormat::Csv:
      emit_csv(report, out);
      return;
  }
}

}  // namespace qifstool
