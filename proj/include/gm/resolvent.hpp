#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gm/saddle.hpp"

namespace gm {

enum class ResolventMethod { automatic, closed_form, alternating };

const char* to_string(ResolventMethod m);

struct ResolventOptions {
  double inner_tol = 1e-8;
  int max_sweeps = 10000;
  ResolventMethod method = ResolventMethod::automatic;
  /// Starting point of the alternating scheme (defaults to the base).
  std::optional<ProductPoint> init;
  /// Probe the regularized problem around the result.
  bool compute_residual = true;
};

struct ResolventResult {
  ProductPoint point;
  /// Distance between the y-iterate and its best-response update in the
  /// final sweep; zero for closed forms.
  double fixed_point_gap = 0.0;
  /// Saddle residual of the regularized problem at the result over local
  /// probes; NaN when not computed.
  double regularized_residual = 0.0;
  int sweeps_used = 0;
  ResolventMethod method = ResolventMethod::closed_form;
  bool converged = true;
  /// Final damping weight of the alternating scheme.
  double damping = 1.0;
};

/// R_lambda(base): the saddle point of
///   (u, v) -> lambda f(u, v) - d(u, x)^2 / 2 + d(v, y)^2 / 2.
/// Throws invalid-lambda, not-concave-convex, or invalid-point. Hitting
/// max_sweeps returns the last iterate with converged = false.
ResolventResult resolvent(const SaddleProblem& problem, const ProductPoint& base, double lambda,
                          const ResolventOptions& opts = {});

/// As resolvent, but throws no-convergence instead of returning a flagged result.
ProductPoint resolve(const SaddleProblem& problem, const ProductPoint& base, double lambda,
                     const ResolventOptions& opts = {});

struct FixedPointRow {
  ProductPoint candidate;
  double gap = 0.0;       ///< d(R z, z)
  double residual = 0.0;  ///< saddle_residual(z)
};

struct FixedPointReport {
  std::vector<FixedPointRow> rows;
  /// Every candidate either has both quantities below their tolerances or
  /// both above them.
  bool consistent = true;
};

FixedPointReport check_fixed_points(const SaddleProblem& problem, double lambda,
                                    const std::vector<ProductPoint>& candidates,
                                    const std::vector<ProductPoint>& probes, const ResolventOptions& opts = {},
                                    double residual_tol = 1e-8);

/// LHS - RHS of
///   d(Rz, w)^2 + d(Rz, z)^2 + 2 lambda {f(x', R2 z) - f(R1 z, y')} <= d(z, w)^2.
double check_resolvent_inequality(const SaddleProblem& problem, double lambda, const ProductPoint& z,
                                  const ProductPoint& w, const ResolventOptions& opts = {});

/// LHS - RHS of
///   (l+m) d(Rl z, Rm w)^2 + m d(Rl z, z)^2 + l d(Rm w, w)^2
///     <= l d(Rl z, w)^2 + m d(Rm w, z)^2.
double check_resolvent_comparison(const SaddleProblem& problem, double lambda, double mu, const ProductPoint& z,
                                  const ProductPoint& w, const ResolventOptions& opts = {});

struct NonspreadingReport {
  /// Largest LHS - RHS of the firm nonspreading inequality.
  double nonspreading = 0.0;
  /// Largest d(Rz, Rw) - d(z, w).
  double nonexpansive = 0.0;
  std::size_t pairs = 0;
};

NonspreadingReport check_firm_nonspreading_and_nonexpansive(
    const SaddleProblem& problem, double lambda, const std::vector<std::pair<ProductPoint, ProductPoint>>& pairs,
    const ResolventOptions& opts = {});

/// (1/mu) d(Rm Rl z, Rl z) - (1/l) d(Rl z, z).
double check_step_estimate(const SaddleProblem& problem, double lambda, double mu, const ProductPoint& z,
                           const ResolventOptions& opts = {});

}  // namespace gm
