#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "gm/minimax.hpp"
#include "gm/ppa.hpp"
#include "json.hpp"

namespace gm {

struct OutputNames {
  std::string trace = "trace.csv";
  std::string summary = "summary.json";
  std::string report = "oracle.json";
};

/// A parsed experiment. Every field except the problem has a default; the
/// solve command additionally requires initial_point.
struct ExperimentConfig {
  std::shared_ptr<const SaddleProblem> problem;
  std::optional<ProductPoint> initial_point;
  Schedule schedule = Schedule::constant(1.0);
  StopCriteria stop;
  ResolventOptions inner;
  std::optional<ProductPoint> reference;
  /// Set when the config declares grids; otherwise the problem's own grids apply.
  std::optional<GridSpec> grid_x;
  std::optional<GridSpec> grid_y;
  double boundedness_cap = 1e6;
  std::uint64_t seed = 0;
  OutputNames output;
};

/// All parse failures throw gm::Error with kind invalid-config.
SpaceHandle parse_space(const nlohmann::json& j);
Point parse_point(const nlohmann::json& j, const Space& space);
GridSpec parse_grid(const nlohmann::json& j);
Schedule parse_schedule(const nlohmann::json& j);
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// Natural grid for a backend: its box or simplex, [-1,1]^d for unconstrained
/// Euclidean space, a radial grid for the ball, per-edge subdivision on trees.
GridSpec default_grid(const Space& space);

nlohmann::json point_json(const Point& p);
nlohmann::json product_point_json(const ProductPoint& z);

}  // namespace gm
