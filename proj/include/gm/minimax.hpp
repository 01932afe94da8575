#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gm/ppa.hpp"
#include "gm/saddle.hpp"

namespace gm {

inline constexpr std::uint64_t kDefaultMaxEvals = 100'000'000;

struct MinimaxReport {
  /// max over grid_x of min over grid_y, attained at (maxmin_x, maxmin_y).
  double maxmin = 0.0;
  Point maxmin_x;
  Point maxmin_y;
  /// min over grid_y of max over grid_x, attained at (minmax_x, minmax_y).
  double minmax = 0.0;
  Point minmax_x;
  Point minmax_y;
  double gap = 0.0;
  std::size_t size_x = 0;
  std::size_t size_y = 0;
  double step_x = 0.0;
  double step_y = 0.0;
  /// Grid over a bounding box of an unbounded factor.
  bool boxed = false;

  /// (argmax of maxmin, argmin of minmax).
  ProductPoint saddle_candidate() const { return {maxmin_x, minmax_y}; }
};

/// Exact grid values; ties go to the first point in enumeration order.
/// Throws grid-too-large when |grid_x| * |grid_y| exceeds max_evals.
MinimaxReport grid_minimax(const SaddleProblem& problem, const GridSpec& grid_x, const GridSpec& grid_y,
                           std::uint64_t max_evals = kDefaultMaxEvals);

inline MinimaxReport grid_minimax(const SaddleProblem& problem, std::uint64_t max_evals = kDefaultMaxEvals) {
  return grid_minimax(problem, problem.grid_x, problem.grid_y, max_evals);
}

/// Largest |f(z) - f(w)| / d(z, w) over sampled pairs that differ in one
/// factor by the given separation, starting from grid points.
double estimate_lipschitz(const SaddleProblem& problem, const GridSpec& grid_x, const GridSpec& grid_y,
                          double separation, std::size_t samples = 2000, std::uint64_t seed = 1);

struct GapSample {
  std::size_t resolution = 0;
  double gap = 0.0;
  double maxmin = 0.0;
  double minmax = 0.0;
  double step = 0.0;
  double lipschitz = 0.0;
  /// 4 * lipschitz * step.
  double bound = 0.0;
};

struct GapStudy {
  std::vector<GapSample> samples;
  /// The last gap is no larger than the first (up to 1e-12).
  bool shrinking = false;
  /// Every gap is within its covering bound.
  bool within_bound = false;
  bool boxed = false;
};

GapStudy sion_gap_study(const SaddleProblem& problem, const std::vector<std::size_t>& resolutions,
                        std::uint64_t max_evals = kDefaultMaxEvals, std::uint64_t seed = 1);

struct OracleComparison {
  /// Product distance from the final iterate to the grid saddle candidate.
  double distance = 0.0;
  /// |f(final iterate) - maxmin|.
  double value_difference = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

OracleComparison oracle_vs_solver(const SaddleProblem& problem, const MinimaxReport& report,
                                  const IterateTrace& trace, double cap = 1e6);

}  // namespace gm
