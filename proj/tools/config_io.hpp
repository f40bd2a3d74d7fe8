#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qifs/embeddings.hpp"
#include "qifs/kraus.hpp"
#include "qifs/solvers.hpp"
#include "qifs/stochastic.hpp"

namespace qifstool {

// A parsed scenario file (or its flag-built equivalent). Exactly one model
// source is populated: inline operator families, or an embedding description.
struct Scenario {
  std::string name;
  nlohmann::json canonical;  // normalized source document; hashed for the digest

  std::optional<qifs::KrausFamily> dynamics;   // families.V
  std::optional<qifs::KrausFamily> weights;    // families.W
  std::optional<qifs::KrausFamily> potential;  // families.H

  std::optional<qifs::EmbeddingKind> embedding;
  std::optional<qifs::StochasticMatrix> p;
  std::optional<qifs::StochasticMatrix> q;
  std::vector<double> a;  // row-major real matrix for perron/bridge lifts

  qifs::SolveConfig solver;
  std::optional<std::uint64_t> seed;

  bool has_model() const { return dynamics.has_value(); }
  bool has_embedding() const { return embedding.has_value(); }
};

// Loads and validates a scenario file. All structural problems raise
// qifs::Error(BadInput) with a message naming the offending key.
Scenario load_scenario(const std::string& path);

// Parses one matrix in the config encoding: an array of rows whose entries
// are either plain numbers or [re, im] pairs.
qifs::ComplexMatrix parse_complex_matrix(const nlohmann::json& rows,
                                         const std::string& where);

// Splits a comma-separated list of numbers ("1,4,3,0.5").
std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& where);

// Builds a column-stochastic matrix from row-major entries, mapping
// validation failures to BadInput with the flag/key name.
qifs::StochasticMatrix stochastic_from_row_major(const std::vector<double>& entries,
                                                 const std::string& where);

// JSON round-trip encoding of a complex matrix ([re, im] entry pairs).
nlohmann::json complex_matrix_to_json(const qifs::ComplexMatrix& m);

}  // namespace qifstool
