#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fram/assignment.hpp"
#include "fram/graph.hpp"
#include "fram/harness.hpp"
#include "fram/matrix.hpp"
#include "fram/projection.hpp"
#include "fram/solver.hpp"

namespace fram::io {

inline constexpr int kSchemaVersion = 1;

// One row per line, comma-separated decimals, no header. Values are written
// with 17 significant digits so a write/read cycle is bit-exact.
Matrix read_matrix_csv(std::istream& in);
void write_matrix_csv(std::ostream& out, const Matrix& m);
Matrix load_matrix_csv(const std::filesystem::path& path);

// {"n": int, "edges": [[i, j, w], ...], "features": [[...], ...] | null}
// Edges are stored symmetrically; negative weights and out-of-range indices
// are rejected with ValidationError.
AttributedGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const AttributedGraph& g);
AttributedGraph load_graph(const std::filesystem::path& path);

// Accepts a bare array or an object with a "perm" or "assignment" array.
Permutation permutation_from_json(const nlohmann::json& j);
Permutation load_permutation(const std::filesystem::path& path);

nlohmann::json to_json(const MatchResult& r, const std::string& precision);
nlohmann::json to_json(const ProjectionTrace& t);
nlohmann::json to_json(const ExperimentRecord& r);

// Parses a whole file as JSON; wraps parse errors in ValidationError.
nlohmann::json load_json(const std::filesystem::path& path);

}  // namespace fram::io
