#include "config_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qifs/errors.hpp"

namespace qifstool {

using nlohmann::json;
using qifs::Error;
using qifs::ErrorCode;

namespace {

[[noreturn]] void bad(const std::string& message) {
  throw Error(ErrorCode::BadInput, message);
}

void require_keys(const json& object, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& item : object.items()) {
    if (!allowed.count(item.key()))
      bad(where + ": unknown key \"" + item.key() + "\"");
  }
}

double number_at(const json& value, const std::string& where) {
  if (!value.is_number()) bad(where + ": expected a number");
  return value.get<double>();
}

qifs::KrausFamily parse_family(const json& list, const std::string& where) {
  if (!list.is_array() || list.empty())
    bad(where + ": expected a non-empty array of matrices");
  std::vector<qifs::ComplexMatrix> ops;
  ops.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i)
    ops.push_back(
        parse_complex_matrix(list[i], where + "[" + std::to_string(i) + "]"));
  return qifs::KrausFamily(std::move(ops));
}

std::vector<double> parse_real_matrix(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty()) bad(where + ": expected an array of rows");
  const std::size_t dim = rows.size();
  std::vector<double> entries;
  entries.reserve(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.size() != dim)
      bad(where + ": row " + std::to_string(r) + " must have " +
          std::to_string(dim) + " entries");
    for (std::size_t c = 0; c < dim; ++c)
      entries.push_back(number_at(row[c], where + " entry (" + std::to_string(r) +
                                              "," + std::to_string(c) + ")"));
  }
  return entries;
}

void parse_embedding_block(const json& block, Scenario& out) {
  require_keys(block, {"kind", "convention", "p", "q", "a"}, "embedding");
  if (!block.contains("kind") || !block["kind"].is_string())
    bad("embedding: missing string key \"kind\"");
  out.embedding = qifs::embedding_kind_from_name(block["kind"].get<std::string>());

  const bool stochastic_inputs = block.contains("p") || block.contains("q");
  if (stochastic_inputs) {
    if (!block.contains("convention") ||
        block["convention"].get<std::string>() != "column-stochastic")
      bad("embedding: stochastic matrices must declare "
          "\"convention\": \"column-stochastic\"");
  }
  if (block.contains("p"))
    out.p = stochastic_from_row_major(parse_real_matrix(block["p"], "embedding.p"),
                                      "embedding.p");
  if (block.contains("q"))
    out.q = stochastic_from_row_major(parse_real_matrix(block["q"], "embedding.q"),
                                      "embedding.q");
  if (block.contains("a")) out.a = parse_real_matrix(block["a"], "embedding.a");
}

void parse_model_block(const json& block, Scenario& out) {
  require_keys(block, {"dim", "families"}, "model");
  if (!block.contains("families") || !block["families"].is_object())
    bad("model: missing object key \"families\"");
  const json& families = block["families"];
  require_keys(families, {"V", "W", "H"}, "model.families");
  if (!families.contains("V")) bad("model.families: dynamics family \"V\" is required");
  out.dynamics = parse_family(families["V"], "model.families.V");
  if (families.contains("W"))
    out.weights = parse_family(families["W"], "model.families.W");
  if (families.contains("H"))
    out.potential = parse_family(families["H"], "model.families.H");

  const int dim = out.dynamics->dim();
  if (block.contains("dim")) {
    if (!block["dim"].is_number_integer() || block["dim"].get<int>() != dim)
      bad("model.dim: does not match the matrices (" + std::to_string(dim) + ")");
  }
  if (out.weights && out.weights->dim() != dim)
    bad("model.families.W: dimension differs from V");
  if (out.potential && out.potential->dim() != dim)
    bad("model.families.H: dimension differs from V");
  if (out.weights && out.weights->arity() != out.dynamics->arity())
    bad("model.families.W: arity differs from V");
  if (out.potential && out.potential->arity() != out.dynamics->arity())
    bad("model.families.H: arity differs from V");
}

}  // namespace

qifs::ComplexMatrix parse_complex_matrix(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty()) bad(where + ": expected an array of rows");
  const std::size_t dim = rows.size();
  qifs::ComplexMatrix m(static_cast<int>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.size() != dim)
      bad(where + ": row " + std::to_string(r) + " must have " +
          std::to_string(dim) + " entries (matrices are square)");
    for (std::size_t c = 0; c < dim; ++c) {
      const json& entry = row[c];
      const std::string at = where + " entry (" + std::to_string(r) + "," +
                             std::to_string(c) + ")";
      if (entry.is_number()) {
        m(static_cast<int>(r), static_cast<int>(c)) = entry.get<double>();
      } else if (entry.is_array() && entry.size() == 2) {
        m(static_cast<int>(r), static_cast<int>(c)) =
            qifs::Complex(number_at(entry[0], at), number_at(entry[1], at));
      } else {
        bad(at + ": expected a number or an [re, im] pair");
      }
    }
  }
  if (!m.is_finite()) bad(where + ": entries must be finite");
  return m;
}

std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& where) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
        ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      bad(where + ": \"" + item + "\" is not a number");
    }
  }
  if (values.empty()) bad(where + ": empty list");
  return values;
}

qifs::StochasticMatrix stochastic_from_row_major(const std::vector<double>& entries,
                                                 const std::string& where) {
  const double root = std::sqrt(static_cast<double>(entries.size()));
  const int dim = static_cast<int>(std::lround(root));
  if (dim < 1 || static_cast<std::size_t>(dim) * dim != entries.size())
    bad(where + ": expected dim*dim entries, got " + std::to_string(entries.size()));
  try {
    return qifs::StochasticMatrix(dim, entries);
  } catch (const Error& e) {
    std::string detail = e.what();
    const std::string prefix = std::string(qifs::error_code_name(e.code())) + ": ";
    if (detail.rfind(prefix, 0) == 0) detail.erase(0, prefix.size());
    bad(where + ": " + detail);
  }
}

nlohmann::json complex_matrix_to_json(const qifs::ComplexMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.dim(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config file \"" + path + "\"");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    bad("config \"" + path + "\" is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) bad("config root must be a JSON object");
  require_keys(doc, {"name", "model", "embedding", "solver", "seed"}, "config");

  Scenario out;
  out.canonical = doc;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) bad("name: expected a string");
    out.name = doc["name"].get<std::string>();
  }

  const bool has_model = doc.contains("model");
  const bool has_embedding = doc.contains("embedding");
  if (has_model == has_embedding)
    bad("config must contain exactly one of \"model\" or \"embedding\"");
  if (has_model) parse_model_block(doc["model"], out);
  if (has_embedding) parse_embedding_block(doc["embedding"], out);

  if (doc.contains("solver")) {
    const json& solver = doc["solver"];
    require_keys(solver, {"tol", "max_iter", "regularization_n0"}, "solver");
    if (solver.contains("tol")) {
      out.solver.tol = number_at(solver["tol"], "solver.tol");
      if (!(out.solver.tol > 0.0)) bad("solver.tol: must be positive");
    }
    if (solver.contains("max_iter")) {
      if (!solver["max_iter"].is_number_integer() ||
          solver["max_iter"].get<long>() < 1)
        bad("solver.max_iter: must be a positive integer");
      out.solver.max_iter = solver["max_iter"].get<long>();
    }
    if (solver.contains("regularization_n0")) {
      if (!solver["regularization_n0"].is_number_integer() ||
          solver["regularization_n0"].get<int>() < 0)
        bad("solver.regularization_n0: must be a non-negative integer");
      out.solver.regularization_n0 = solver["regularization_n0"].get<int>();
    }
  }

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned())
      bad("seed: must be a non-negative integer");
    out.seed = doc["seed"].get<std::uint64_t>();
  }
  return out;
}

}  // namespace qifstool
