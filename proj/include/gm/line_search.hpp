#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <limits>
#include <utility>
#include <vector>

#include "gm/space.hpp"

namespace gm {

struct LineMinimum {
  double arg = 0.0;
  double value = std::numeric_limits<double>::infinity();
};

struct LineSearchOptions {
  /// Bracket width at which golden-section stops.
  double tol = 1e-12;
  int max_iterations = 200;
  /// Initial step when bracketing on an unbounded line.
  double initial_step = 1.0;
  int max_expansions = 80;
  /// Half-width of the finite-difference stencil used to polish the golden
  /// estimate with one parabolic step. Zero disables polishing.
  double polish_step = 1e-5;
};

/// Golden-section search for a quasi-convex f on [lo, hi]. Endpoints are
/// evaluated too, and among equal values the smallest argument wins.
LineMinimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                           const LineSearchOptions& opts = {});

/// Minimizes a quasi-convex f over [lo, hi] (either bound may be infinite).
/// Unbounded directions are bracketed by step doubling from 0, which must lie
/// in [lo, hi]. Non-finite values count as +infinity.
LineMinimum minimize_on_line(const std::function<double(double)>& f, double lo, double hi,
                             const LineSearchOptions& opts = {});

struct MinimizeOptions {
  int max_sweeps = 500;
  /// Stop once a full sweep moves the iterate by at most this distance.
  double move_tol = 1e-12;
  LineSearchOptions line{};
};

template <class P>
struct MinimizeResult {
  P point;
  double value = 0.0;
  int sweeps = 0;
  bool converged = false;
};

/// Cyclic geodesic line search for a geodesically convex objective. Each sweep
/// visits every block the space offers at the current iterate; exhaustive
/// blocks jump to their best line minimum, others are visited in order.
/// `extra_lines` may add problem-specific lines at each iterate.
template <MinimizableSpace S, class F>
MinimizeResult<typename S::point_type> minimize_geodesic(
    const S& space, F&& objective, typename S::point_type start, const MinimizeOptions& opts = {},
    const std::function<std::vector<GeodesicLine<typename S::point_type>>(
        const typename S::point_type&)>& extra_lines = {}) {
  using P = typename S::point_type;
  auto safe_eval = [&](const P& p) -> double {
    if (!space.is_valid(p)) return std::numeric_limits<double>::infinity();
    double v = objective(p);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  MinimizeResult<P> result{std::move(start), 0.0, 0, false};
  result.value = safe_eval(result.point);

  // Moves whose value is worse than the incumbent by less than this are
  // rounding noise; they are accepted so the polished location survives.
  auto noise = [](double v) { return 16.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(v)); };

  auto line_min = [&](const GeodesicLine<P>& line) {
    auto g = [&](double s) { return safe_eval(line.at(s)); };
    return minimize_on_line(g, line.lo, line.hi, opts.line);
  };

  auto build = [&](const P& at) {
    std::vector<LineBlock<P>> blocks = space.search_blocks(at);
    if (extra_lines) blocks.push_back(LineBlock<P>{extra_lines(at), false});
    return blocks;
  };

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const P sweep_start = result.point;
    // Lines through a point go stale once the iterate moves, so the blocks
    // are rebuilt whenever that happens. Block layout is point-independent.
    std::vector<LineBlock<P>> blocks = build(result.point);
    P built_at = result.point;
    auto refresh = [&] {
      if (!(result.point == built_at)) {
        blocks = build(result.point);
        built_at = result.point;
      }
    };

    for (std::size_t b = 0; b < blocks.size(); ++b) {
      refresh();
      if (blocks[b].exhaustive) {
        std::optional<P> best;
        double best_value = result.value;
        for (const auto& line : blocks[b].lines) {
          LineMinimum m = line_min(line);
          if (m.value < best_value) {
            best_value = m.value;
            best = line.at(m.arg);
          }
        }
        if (best) {
          result.point = *best;
          result.value = best_value;
        }
        continue;
      }
      for (std::size_t i = 0; i < blocks[b].lines.size(); ++i) {
        refresh();
        const GeodesicLine<P> line = blocks[b].lines[i];
        LineMinimum m = line_min(line);
        if (m.value <= result.value + noise(result.value)) {
          result.point = line.at(m.arg);
          result.value = safe_eval(result.point);
        }
      }
    }
    result.sweeps = sweep + 1;
    if (space.distance(sweep_start, result.point) <= opts.move_tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace gm
