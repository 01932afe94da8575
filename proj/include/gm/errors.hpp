#pragma once

#include <stdexcept>
#include <string>

namespace gm {

enum class ErrorKind {
  invalid_point,
  dimension_mismatch,
  parameter_out_of_range,
  triangle_inequality_violated,
  empty_tail,
  empty_probe_set,
  invalid_lambda,
  invalid_edge_id,
  offset_out_of_range,
  point_on_boundary,
  invalid_tree,
  no_convergence,
  grid_too_large,
  invalid_grid,
  invalid_config,
  not_concave_convex,
};

const char* to_string(ErrorKind kind);

/// Base exception for every failure raised by the library. The kind is
/// stable and is what callers (and the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_point: return "invalid-point";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::parameter_out_of_range: return "parameter-out-of-range";
    case ErrorKind::triangle_inequality_violated: return "triangle-inequality-violated";
    case ErrorKind::empty_tail: return "empty-tail";
    case ErrorKind::empty_probe_set: return "empty-probe-set";
    case ErrorKind::invalid_lambda: return "invalid-lambda";
    case ErrorKind::invalid_edge_id: return "invalid-edge-id";
    case ErrorKind::offset_out_of_range: return "offset-out-of-range";
    case ErrorKind::point_on_boundary: return "point-on-boundary";
    case ErrorKind::invalid_tree: return "invalid-tree";
    case ErrorKind::no_convergence: return "no-convergence";
    case ErrorKind::grid_too_large: return "grid-too-large";
    case ErrorKind::invalid_grid: return "invalid-grid";
    case ErrorKind::invalid_config: return "invalid-config";
    case ErrorKind::not_concave_convex: return "not-concave-convex";
  }
  return "unknown";
}

}  // namespace gm
