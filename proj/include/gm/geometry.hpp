#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "gm/line_search.hpp"
#include "gm/space.hpp"

namespace gm {

// ---------------------------------------------------------------------------
// Comparison triangles

using Vec2 = std::array<double, 2>;

/// Euclidean triangle with |x̄ȳ| = c, |ȳz̄| = a, |z̄x̄| = b.
struct ComparisonTriangle {
  Vec2 x{};
  Vec2 y{};
  Vec2 z{};
};

/// Builds a planar triangle realizing the side lengths a = d(y,z),
/// b = d(z,x), c = d(x,y). The longest side is laid on the first axis from the
/// origin and the third vertex goes in the upper half-plane. Throws
/// triangle-inequality-violated when no such triangle exists.
ComparisonTriangle comparison_triangle(double a, double b, double c);

inline double planar_distance(const Vec2& p, const Vec2& q) { return std::hypot(p[0] - q[0], p[1] - q[1]); }

// ---------------------------------------------------------------------------
// CAT(0) inequality checks. Each returns LHS - RHS: nonpositive (up to
// rounding) on a CAT(0) space.

/// d((1-a)x ⊕ a y, z)^2 - [(1-a)d(x,z)^2 + a d(y,z)^2 - a(1-a) d(x,y)^2].
template <GeodesicSpace S>
double check_cn_inequality(const S& space, const typename S::point_type& x, const typename S::point_type& y,
                           const typename S::point_type& z, double alpha) {
  const double m = space.distance(space.geodesic(x, y, alpha), z);
  const double dxz = space.distance(x, z);
  const double dyz = space.distance(y, z);
  const double dxy = space.distance(x, y);
  return m * m - ((1.0 - alpha) * dxz * dxz + alpha * dyz * dyz - alpha * (1.0 - alpha) * dxy * dxy);
}

/// Convexity of the distance: d((1-a)x ⊕ a y, z) - [(1-a)d(x,z) + a d(y,z)].
template <GeodesicSpace S>
double check_distance_convexity(const S& space, const typename S::point_type& x, const typename S::point_type& y,
                                const typename S::point_type& z, double alpha) {
  return space.distance(space.geodesic(x, y, alpha), z) -
         ((1.0 - alpha) * space.distance(x, z) + alpha * space.distance(y, z));
}

/// Four-point Cauchy-Schwarz residual
/// ½[d14² + d23² - d13² - d24²] - d12·d34.
template <GeodesicSpace S>
double check_quadrilateral_cs(const S& space, const typename S::point_type& x1, const typename S::point_type& x2,
                              const typename S::point_type& x3, const typename S::point_type& x4) {
  auto sq = [](double v) { return v * v; };
  return 0.5 * (sq(space.distance(x1, x4)) + sq(space.distance(x2, x3)) - sq(space.distance(x1, x3)) -
                sq(space.distance(x2, x4))) -
         space.distance(x1, x2) * space.distance(x3, x4);
}

// ---------------------------------------------------------------------------
// Metric projection onto a geodesic segment

/// Parameter t in [0,1] of the nearest point of [a,b] to x. t ↦ d(γ(t), x) is
/// convex, so golden-section applies; ties go to the smallest t.
template <GeodesicSpace S>
double segment_projection_parameter(const S& space, const typename S::point_type& a,
                                    const typename S::point_type& b, const typename S::point_type& x) {
  space.distance(a, x);  // validates a and x
  space.distance(b, x);
  if (space.distance(a, b) == 0.0) return 0.0;
  auto f = [&](double t) { return space.distance(space.geodesic(a, b, t), x); };
  LineSearchOptions opts;
  opts.tol = 1e-13;
  return minimize_on_line(f, 0.0, 1.0, opts).arg;
}

template <GeodesicSpace S>
typename S::point_type project_to_segment(const S& space, const typename S::point_type& a,
                                          const typename S::point_type& b, const typename S::point_type& x) {
  return space.geodesic(a, b, segment_projection_parameter(space, a, b, x));
}

/// Firm nonspreadingness residual of a map with images px = P(x), py = P(y):
/// 2d(px,py)² + d(px,x)² + d(py,y)² - d(px,y)² - d(py,x)².
template <GeodesicSpace S>
double firm_nonspreading_residual(const S& space, const typename S::point_type& x, const typename S::point_type& y,
                                  const typename S::point_type& px, const typename S::point_type& py) {
  auto sq = [](double v) { return v * v; };
  return 2.0 * sq(space.distance(px, py)) + sq(space.distance(px, x)) + sq(space.distance(py, y)) -
         sq(space.distance(px, y)) - sq(space.distance(py, x));
}

// ---------------------------------------------------------------------------
// Asymptotic centers (finite-tail surrogate)

enum class CenterStatus { ok, unbounded_tail };

template <class P>
struct AsymptoticCenter {
  P center;
  double radius = 0.0;
  CenterStatus status = CenterStatus::ok;
  int sweeps = 0;
};

struct AsymptoticCenterOptions {
  /// Tail starts here; defaults to ceil(length / 2).
  std::optional<std::size_t> tail_start;
  /// Tails with diameter above this are reported as unbounded.
  double diameter_cap = 1e6;
  int max_sweeps = 200;
  double move_tol = 1e-8;
};

/// Approximates the minimizer of y ↦ max_{n ≥ tail_start} d(y, x_n), the
/// finite stand-in for y ↦ limsup d(y, x_n). Starts at the first tail point and
/// runs geodesic line searches along the backend's lines plus the geodesics
/// towards every tail point.
template <MinimizableSpace S>
AsymptoticCenter<typename S::point_type> asymptotic_center_estimate(
    const S& space, std::span<const typename S::point_type> points, const AsymptoticCenterOptions& opts = {}) {
  using P = typename S::point_type;
  const std::size_t start = opts.tail_start.value_or((points.size() + 1) / 2);
  if (points.empty() || start >= points.size()) {
    throw Error(ErrorKind::empty_tail, "tail of " + std::to_string(points.size()) + " points starting at " +
                                           std::to_string(start) + " is empty");
  }
  const std::span<const P> tail = points.subspan(start);
  double diameter = 0.0;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    for (std::size_t j = i + 1; j < tail.size(); ++j) diameter = std::max(diameter, space.distance(tail[i], tail[j]));
  }
  if (!(diameter <= opts.diameter_cap)) {
    return {tail.front(), std::numeric_limits<double>::infinity(), CenterStatus::unbounded_tail, 0};
  }

  auto phi = [&](const P& y) {
    double r = 0.0;
    for (const P& x : tail) r = std::max(r, space.distance(y, x));
    return r;
  };
  auto toward_tail = [&](const P& c) {
    std::vector<GeodesicLine<P>> lines;
    for (const P& x : tail) {
      lines.push_back({[&space, c, x](double s) { return space.geodesic(c, x, s); }, 0.0, 1.0});
    }
    return lines;
  };
  MinimizeOptions mopts;
  mopts.max_sweeps = opts.max_sweeps;
  mopts.move_tol = opts.move_tol;
  auto res = minimize_geodesic(space, phi, tail.front(), mopts, toward_tail);
  return {res.point, phi(res.point), CenterStatus::ok, res.sweeps};
}

// ---------------------------------------------------------------------------
// Delta-convergence probe

struct WitnessTail {
  std::size_t witness_index = 0;
  bool skipped = false;
  std::vector<double> projection_distances;  // d(P_[c,y] x_n, c) for each n
  double tail_max = 0.0;
};

struct DeltaProbeReport {
  bool bounded = true;
  double diameter = 0.0;
  std::vector<WitnessTail> witnesses;
  bool consistent = false;
};

struct DeltaProbeOptions {
  /// Fraction of the sequence treated as its tail.
  double tail_fraction = 0.25;
  double tol = 1e-6;
  double diameter_cap = std::numeric_limits<double>::infinity();
};

/// For each witness y, tracks how far the projections of x_n onto the segment
/// [candidate, y] stay from the candidate. A Δ-limit drives all of these to
/// zero, so the sequence is reported consistent with Δ-convergence to the
/// candidate when every tail falls below tol and the sequence is bounded.
template <GeodesicSpace S>
DeltaProbeReport delta_convergence_probe(const S& space, std::span<const typename S::point_type> points,
                                         const typename S::point_type& candidate,
                                         std::span<const typename S::point_type> witnesses,
                                         const DeltaProbeOptions& opts = {}) {
  DeltaProbeReport report;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      report.diameter = std::max(report.diameter, space.distance(points[i], points[j]));
    }
  }
  report.bounded = std::isfinite(report.diameter) && report.diameter <= opts.diameter_cap;

  const std::size_t n = points.size();
  const std::size_t tail_len =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(opts.tail_fraction * static_cast<double>(n))));
  bool all_small = true;
  for (std::size_t w = 0; w < witnesses.size(); ++w) {
    WitnessTail wt;
    wt.witness_index = w;
    if (space.distance(candidate, witnesses[w]) <= space.tolerance()) {
      wt.skipped = true;
      report.witnesses.push_back(std::move(wt));
      continue;
    }
    for (const auto& x : points) {
      wt.projection_distances.push_back(
          space.distance(project_to_segment(space, candidate, witnesses[w], x), candidate));
    }
    for (std::size_t k = n - std::min(n, tail_len); k < n; ++k) {
      wt.tail_max = std::max(wt.tail_max, wt.projection_distances[k]);
    }
    if (!(wt.tail_max <= opts.tol)) all_small = false;
    report.witnesses.push_back(std::move(wt));
  }
  report.consistent = report.bounded && all_small && n > 0;
  return report;
}

}  // namespace gm
