#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gm/config.hpp"

namespace gm {

/// Writes to a sibling temp file, then renames it over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Coordinate column names for one factor: x0, x1, ... for Euclidean and
/// Poincare points, x_edge, x_offset for tree points.
std::vector<std::string> coordinate_columns(const Space& space, const std::string& prefix);

/// One row per iterate z_n: n, lambda_n, step_distance, residual,
/// [dist_to_reference], then the x and y coordinates. The step fields of row
/// n describe the move z_n -> z_{n+1}, so they are empty on the last row.
/// Numbers use the shortest decimal form that parses back exactly.
std::string trace_csv(const SaddleProblem& problem, const IterateTrace& trace);

/// Inverse of trace_csv for the recorded fields. Throws invalid-config on
/// malformed input.
IterateTrace parse_trace_csv(const SaddleProblem& problem, const std::string& text);

nlohmann::ordered_json minimax_json(const SaddleProblem& problem, const MinimaxReport& report);

/// Pretty-printed with a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

}  // namespace gm
