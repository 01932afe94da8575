#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gm/grid.hpp"
#include "gm/space.hpp"

namespace gm {

/// Declared structure of f. Plain concavity/convexity implies the quasi
/// versions; the library sets both explicitly.
struct Certificates {
  bool concave_x = false;
  bool convex_y = false;
  bool quasi_concave_x = false;
  bool quasi_convex_y = false;
  bool usc_x = false;
  bool lsc_y = false;

  bool concave_convex() const { return concave_x && convex_y && usc_x && lsc_y; }
  bool quasi_concave_convex() const { return quasi_concave_x && quasi_convex_y && usc_x && lsc_y; }
};

using Evaluator = std::function<double(const Point& x, const Point& y)>;

/// Exact resolvent of lambda*f at a base point.
using ClosedFormResolvent = std::function<ProductPoint(const ProductPoint& base, double lambda)>;

/// f: X x Y -> R, maximized over X and minimized over Y.
struct SaddleProblem {
  std::string name;
  ProductSpace space;
  Evaluator f;
  Certificates certificates;
  std::optional<ProductPoint> known_saddle;
  ClosedFormResolvent closed_form;
  GridSpec grid_x;
  GridSpec grid_y;
  /// Sampling scale for random points (box half-width / hyperbolic radius).
  double scale_x = 2.0;
  double scale_y = 2.0;
  /// Witness points for the delta-convergence probe.
  std::vector<ProductPoint> anchors;
  std::string notes;
  /// Set when a factor is unbounded and its grid is only a bounding box.
  bool boxed = false;

  const Space& X() const { return space.left(); }
  const Space& Y() const { return space.right(); }
  double value(const ProductPoint& z) const { return f(z.x, z.y); }
};

/// F(z, w) = f(x, y') - f(x', y) for z = (x, y), w = (x', y').
double bifunction(const SaddleProblem& problem, const ProductPoint& z, const ProductPoint& w);

/// max(0, max over probes w of -F(candidate, w)).
double saddle_residual(const SaddleProblem& problem, const ProductPoint& candidate,
                       const std::vector<ProductPoint>& probes);

/// Deterministic Halton points of X x Y at the problem's sampling scales.
std::vector<ProductPoint> default_probes(const SaddleProblem& problem, std::size_t count);

/// Cartesian product of the problem's two grids.
std::vector<ProductPoint> grid_probes(const SaddleProblem& problem);

struct CoercivityReport {
  std::vector<double> radii;
  /// Per radius, the largest and smallest sampled f(x,b) - f(a,y).
  std::vector<double> worst;
  std::vector<double> best;
  std::vector<double> running_min;
  std::size_t samples_per_radius = 0;
  /// The condition asks f(x,b) - f(a,y) -> -inf along every escaping
  /// sequence, so the verdict follows the worst sample: it must end negative
  /// and never increase with the radius.
  bool consistent = false;
};

CoercivityReport coercivity_probe(const SaddleProblem& problem, const Point& a, const Point& b,
                                  const std::vector<double>& escape_radii, std::size_t samples_per_radius = 64,
                                  std::uint64_t seed = 1);

struct CertificateFuzzReport {
  std::size_t samples = 0;
  /// Largest observed violation of each inequality (<= 0 means never violated).
  double concave_x = 0.0;
  double convex_y = 0.0;
  double quasi_concave_x = 0.0;
  double quasi_convex_y = 0.0;
  double tolerance = 1e-7;

  /// True when no declared certificate was falsified.
  bool passed(const Certificates& declared) const;
};

CertificateFuzzReport fuzz_certificates(const SaddleProblem& problem, std::size_t samples, std::uint64_t seed);

struct ProblemLibraryEntry {
  SaddleProblem problem;
  std::string provenance;
};

const std::vector<ProblemLibraryEntry>& library();

/// Throws invalid-config for unknown names.
const SaddleProblem& find_problem(const std::string& name);

}  // namespace gm
