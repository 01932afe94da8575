#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gm/geometry.hpp"
#include "gm/resolvent.hpp"

namespace gm {

enum class ScheduleKind { constant, power, list };

/// Step sizes lambda_n for n = 1, 2, ...
class Schedule {
 public:
  static Schedule constant(double lambda);
  /// lambda_n = c * n^(-p).
  static Schedule power(double c, double p);
  /// Exactly these values; a run stops once they are used up.
  static Schedule list(std::vector<double> values);

  ScheduleKind kind() const { return kind_; }
  double scale() const { return scale_; }
  double exponent() const { return exponent_; }
  const std::vector<double>& values() const { return values_; }

  /// lambda_n for n >= 1.
  double at(std::size_t n) const;
  /// Number of available steps (unbounded for constant and power).
  std::optional<std::size_t> length() const;

  /// Whether sum lambda_n and sum lambda_n^2 diverge. A finite list says
  /// nothing about infinite sums, so both are false for it.
  bool sum_diverges() const;
  bool sumsq_diverges() const;

  std::string describe() const;

 private:
  Schedule(ScheduleKind kind, double scale, double exponent, std::vector<double> values);

  ScheduleKind kind_;
  double scale_ = 1.0;
  double exponent_ = 0.0;
  std::vector<double> values_;
};

struct StopCriteria {
  int max_iter = 10000;
  double step_tol = 1e-7;
  /// Also required before stopping on step_tol: (1/lambda_n) d(z_{n+1}, z_n).
  double residual_tol = 1e-6;
};

enum class StopReason { step_tol, max_iter, schedule_exhausted, inner_failure };

const char* to_string(StopReason r);

struct IterateTrace {
  /// z_1, ..., z_{m+1}.
  std::vector<ProductPoint> iterates;
  /// Per step n = 1..m: lambda_n, d(z_{n+1}, z_n) and (1/lambda_n) d(z_{n+1}, z_n).
  std::vector<double> lambdas;
  std::vector<double> steps;
  std::vector<double> residuals;
  /// d(z_n, reference) for every iterate, when a reference is given.
  std::optional<ProductPoint> reference;
  std::vector<double> dist_to_reference;
  StopReason stop = StopReason::max_iter;
  /// Set when the inner solver failed; the trace ends at the last good iterate.
  bool truncated = false;
  std::string message;
  double inner_tol = 1e-8;

  std::size_t step_count() const { return steps.size(); }
};

IterateTrace run_ppa(const SaddleProblem& problem, const ProductPoint& z1, const Schedule& schedule,
                     const StopCriteria& stop = {}, const ResolventOptions& inner = {},
                     const std::optional<ProductPoint>& reference = std::nullopt);

/// n_steps applications of the single resolvent R_lambda; no early stop.
IterateTrace picard_iterate(const SaddleProblem& problem, const ProductPoint& z1, double lambda, std::size_t n_steps,
                            const ResolventOptions& inner = {});

struct FejerReport {
  std::vector<double> distances;
  /// Largest d(ref, z_{n+1}) - d(ref, z_n).
  double max_violation = 0.0;
  double slack = 0.0;
  bool passed = true;
};

/// Defaults the slack to 10 * trace.inner_tol per step.
FejerReport fejer_check(const ProductSpace& space, const IterateTrace& trace, const ProductPoint& reference,
                        std::optional<double> slack = std::nullopt);

struct ResidualReport {
  /// Largest r_{n+1} - r_n.
  double max_increase = 0.0;
  bool monotone = true;
  double tail = 0.0;
  /// Tail below the threshold; only expected when the schedule has
  /// sum lambda_n^2 = infinity and the trace is bounded.
  bool vanishing = false;
  double slack = 0.0;
  double threshold = 1e-6;
};

ResidualReport residual_series(const IterateTrace& trace, std::optional<double> slack = std::nullopt,
                               double threshold = 1e-6);

enum class Verdict { bounded, escaped, inconclusive };

const char* to_string(Verdict v);

struct BoundednessReport {
  Verdict verdict = Verdict::inconclusive;
  /// max_n d(z_n, z_1).
  double max_distance = 0.0;
  double tail_diameter = 0.0;
  /// 1-based index of the first iterate farther than cap from z_1.
  std::optional<std::size_t> first_escape;
};

/// escaped: some iterate is farther than cap from z_1. bounded: the run met
/// its stopping rule, or it has at least 8 iterates and the last quarter has
/// diameter below max(step_tol * length, max_distance / 10). Otherwise
/// inconclusive.
BoundednessReport boundedness_verdict(const ProductSpace& space, const IterateTrace& trace, double cap,
                                      double step_tol = 1e-7);

/// Delta-convergence probe of the second half of the trace toward its final
/// iterate, witnessed by the given anchors.
DeltaProbeReport delta_report(const ProductSpace& space, const IterateTrace& trace,
                              const std::vector<ProductPoint>& anchors, double tol = 1e-6);

}  // namespace gm
