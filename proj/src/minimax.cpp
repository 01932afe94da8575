#include "gm/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gm/sampling.hpp"

namespace gm {

MinimaxReport grid_minimax(const SaddleProblem& problem, const GridSpec& grid_x, const GridSpec& grid_y,
                           std::uint64_t max_evals) {
  const std::size_t nx = grid_size(problem.X(), grid_x);
  const std::size_t ny = grid_size(problem.Y(), grid_y);
  const double evals = static_cast<double>(nx) * static_cast<double>(ny);
  if (evals > static_cast<double>(max_evals)) {
    throw Error(ErrorKind::grid_too_large, std::to_string(nx) + " x " + std::to_string(ny) +
                                               " evaluations exceed the cap of " + std::to_string(max_evals));
  }
  const auto xs = grid_points(problem.X(), grid_x);
  const auto ys = grid_points(problem.Y(), grid_y);

  // One pass: row minima give max-min, running column maxima give min-max.
  std::vector<double> col_max(ys.size(), -std::numeric_limits<double>::infinity());
  std::vector<std::size_t> col_arg(ys.size(), 0);
  double maxmin = -std::numeric_limits<double>::infinity();
  std::size_t mm_i = 0, mm_j = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double row_min = std::numeric_limits<double>::infinity();
    std::size_t row_arg = 0;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const double v = problem.f(xs[i], ys[j]);
      if (v < row_min) row_min = v, row_arg = j;
      if (v > col_max[j]) col_max[j] = v, col_arg[j] = i;
    }
    if (row_min > maxmin) maxmin = row_min, mm_i = i, mm_j = row_arg;
  }
  std::size_t mx_j = 0;
  for (std::size_t j = 1; j < ys.size(); ++j) {
    if (col_max[j] < col_max[mx_j]) mx_j = j;
  }

  MinimaxReport rep;
  rep.maxmin = maxmin;
  rep.maxmin_x = xs[mm_i];
  rep.maxmin_y = ys[mm_j];
  rep.minmax = col_max[mx_j];
  rep.minmax_x = xs[col_arg[mx_j]];
  rep.minmax_y = ys[mx_j];
  rep.gap = rep.minmax - rep.maxmin;
  rep.size_x = xs.size();
  rep.size_y = ys.size();
  rep.step_x = grid_step(problem.X(), grid_x);
  rep.step_y = grid_step(problem.Y(), grid_y);
  rep.boxed = problem.boxed;
  return rep;
}

double estimate_lipschitz(const SaddleProblem& problem, const GridSpec& grid_x, const GridSpec& grid_y,
                          double separation, std::size_t samples, std::uint64_t seed) {
  const auto xs = grid_points(problem.X(), grid_x);
  const auto ys = grid_points(problem.Y(), grid_y);
  Sampler rng(seed);
  double L = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Point& x = xs[rng.index(xs.size())];
    const Point& y = ys[rng.index(ys.size())];
    const double fxy = problem.f(x, y);
    if (auto x2 = problem.X().point_at_distance(x, separation, rng.uniforms(problem.X().unit_dim()))) {
      const double d = problem.X().distance(x, *x2);
      if (d > 0.0) L = std::max(L, std::abs(problem.f(*x2, y) - fxy) / d);
    }
    if (auto y2 = problem.Y().point_at_distance(y, separation, rng.uniforms(problem.Y().unit_dim()))) {
      const double d = problem.Y().distance(y, *y2);
      if (d > 0.0) L = std::max(L, std::abs(problem.f(x, *y2) - fxy) / d);
    }
  }
  return L;
}

GapStudy sion_gap_study(const SaddleProblem& problem, const std::vector<std::size_t>& resolutions,
                        std::uint64_t max_evals, std::uint64_t seed) {
  GapStudy study;
  study.boxed = problem.boxed;
  study.within_bound = true;
  for (std::size_t r : resolutions) {
    const GridSpec gx = with_resolution(problem.grid_x, r);
    const GridSpec gy = with_resolution(problem.grid_y, r);
    const MinimaxReport rep = grid_minimax(problem, gx, gy, max_evals);
    GapSample s;
    s.resolution = r;
    s.gap = rep.gap;
    s.maxmin = rep.maxmin;
    s.minmax = rep.minmax;
    s.step = std::max(rep.step_x, rep.step_y);
    s.lipschitz = estimate_lipschitz(problem, gx, gy, s.step, 2000, seed);
    s.bound = 4.0 * s.lipschitz * s.step;
    if (s.gap > s.bound) study.within_bound = false;
    study.samples.push_back(s);
  }
  if (!study.samples.empty()) study.shrinking = study.samples.back().gap <= study.samples.front().gap + 1e-12;
  return study;
}

OracleComparison oracle_vs_solver(const SaddleProblem& problem, const MinimaxReport& report,
                                  const IterateTrace& trace, double cap) {
  if (trace.iterates.empty()) throw Error(ErrorKind::empty_tail, "empty trace");
  OracleComparison c;
  const ProductPoint& z = trace.iterates.back();
  c.distance = problem.space.distance(z, report.saddle_candidate());
  c.value_difference = std::abs(problem.value(z) - report.maxmin);
  c.verdict = boundedness_verdict(problem.space, trace, cap).verdict;
  return c;
}

}  // namespace gm
