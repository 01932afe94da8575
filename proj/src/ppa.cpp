#include "gm/ppa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gm/format.hpp"

namespace gm {

namespace {

void check_lambda(double l, const char* what) {
  if (!(l > 0.0) || !std::isfinite(l)) throw Error(ErrorKind::invalid_lambda, std::string(what) + " must be positive and finite");
}

}  // namespace

Schedule::Schedule(ScheduleKind kind, double scale, double exponent, std::vector<double> values)
    : kind_(kind), scale_(scale), exponent_(exponent), values_(std::move(values)) {}

Schedule Schedule::constant(double lambda) {
  check_lambda(lambda, "constant schedule lambda");
  return Schedule(ScheduleKind::constant, lambda, 0.0, {});
}

Schedule Schedule::power(double c, double p) {
  check_lambda(c, "power schedule scale c");
  if (!std::isfinite(p)) throw Error(ErrorKind::parameter_out_of_range, "power schedule exponent must be finite");
  return Schedule(ScheduleKind::power, c, p, {});
}

Schedule Schedule::list(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::invalid_lambda, "explicit schedule is empty");
  for (double v : values) check_lambda(v, "every scheduled lambda");
  return Schedule(ScheduleKind::list, 1.0, 0.0, std::move(values));
}

double Schedule::at(std::size_t n) const {
  if (n == 0) throw Error(ErrorKind::parameter_out_of_range, "schedules are indexed from 1");
  switch (kind_) {
    case ScheduleKind::constant: return scale_;
    case ScheduleKind::power: return scale_ * std::pow(static_cast<double>(n), -exponent_);
    case ScheduleKind::list:
      if (n > values_.size()) throw Error(ErrorKind::parameter_out_of_range, "explicit schedule exhausted");
      return values_[n - 1];
  }
  return scale_;
}

std::optional<std::size_t> Schedule::length() const {
  if (kind_ == ScheduleKind::list) return values_.size();
  return std::nullopt;
}

bool Schedule::sum_diverges() const {
  switch (kind_) {
    case ScheduleKind::constant: return true;
    case ScheduleKind::power: return exponent_ <= 1.0;
    case ScheduleKind::list: return false;
  }
  return false;
}

bool Schedule::sumsq_diverges() const {
  switch (kind_) {
    case ScheduleKind::constant: return true;
    case ScheduleKind::power: return exponent_ <= 0.5;
    case ScheduleKind::list: return false;
  }
  return false;
}

std::string Schedule::describe() const {
  switch (kind_) {
    case ScheduleKind::constant: return "constant(" + shortest(scale_) + ")";
    case ScheduleKind::power: return "power(c=" + shortest(scale_) + ", p=" + shortest(exponent_) + ")";
    case ScheduleKind::list: return "list(" + std::to_string(values_.size()) + " values)";
  }
  return "";
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::step_tol: return "step-tol";
    case StopReason::max_iter: return "max-iter";
    case StopReason::schedule_exhausted: return "schedule-exhausted";
    case StopReason::inner_failure: return "inner-failure";
  }
  return "unknown";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::bounded: return "bounded";
    case Verdict::escaped: return "escaped";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

IterateTrace iterate(const SaddleProblem& problem, const ProductPoint& z1, const Schedule& schedule,
                     std::size_t max_steps, std::optional<StopCriteria> stop, const ResolventOptions& inner,
                     const std::optional<ProductPoint>& reference) {
  problem.space.validate(z1);
  if (reference) problem.space.validate(*reference);
  ResolventOptions opts = inner;
  opts.compute_residual = false;

  IterateTrace tr;
  tr.inner_tol = inner.inner_tol;
  tr.reference = reference;
  tr.iterates.push_back(z1);
  auto record_ref = [&](const ProductPoint& z) {
    if (reference) tr.dist_to_reference.push_back(problem.space.distance(z, *reference));
  };
  record_ref(z1);

  tr.stop = StopReason::max_iter;
  const auto available = schedule.length();
  for (std::size_t n = 1; n <= max_steps; ++n) {
    if (available && n > *available) {
      tr.stop = StopReason::schedule_exhausted;
      break;
    }
    const double lambda = schedule.at(n);
    const ProductPoint& z = tr.iterates.back();
    const ResolventResult r = resolvent(problem, z, lambda, opts);
    if (!r.converged) {
      tr.truncated = true;
      tr.stop = StopReason::inner_failure;
      tr.message = "inner solver did not converge at step " + std::to_string(n) + " (gap " +
                   shortest(r.fixed_point_gap) + " after " + std::to_string(r.sweeps_used) + " sweeps)";
      break;
    }
    const double step = problem.space.distance(r.point, z);
    tr.lambdas.push_back(lambda);
    tr.steps.push_back(step);
    tr.residuals.push_back(step / lambda);
    tr.iterates.push_back(r.point);
    record_ref(r.point);
    if (stop && step <= stop->step_tol && step / lambda <= stop->residual_tol) {
      tr.stop = StopReason::step_tol;
      break;
    }
  }
  return tr;
}

}  // namespace

IterateTrace run_ppa(const SaddleProblem& problem, const ProductPoint& z1, const Schedule& schedule,
                     const StopCriteria& stop, const ResolventOptions& inner,
                     const std::optional<ProductPoint>& reference) {
  if (stop.max_iter < 1) throw Error(ErrorKind::parameter_out_of_range, "max_iter must be at least 1");
  return iterate(problem, z1, schedule, static_cast<std::size_t>(stop.max_iter), stop, inner, reference);
}

IterateTrace picard_iterate(const SaddleProblem& problem, const ProductPoint& z1, double lambda, std::size_t n_steps,
                            const ResolventOptions& inner) {
  return iterate(problem, z1, Schedule::constant(lambda), n_steps, std::nullopt, inner, std::nullopt);
}

FejerReport fejer_check(const ProductSpace& space, const IterateTrace& trace, const ProductPoint& reference,
                        std::optional<double> slack) {
  FejerReport rep;
  rep.slack = slack.value_or(10.0 * trace.inner_tol);
  rep.max_violation = -std::numeric_limits<double>::infinity();
  for (const auto& z : trace.iterates) rep.distances.push_back(space.distance(z, reference));
  for (std::size_t i = 1; i < rep.distances.size(); ++i) {
    rep.max_violation = std::max(rep.max_violation, rep.distances[i] - rep.distances[i - 1]);
  }
  if (rep.distances.size() < 2) rep.max_violation = 0.0;
  rep.passed = rep.max_violation <= rep.slack;
  return rep;
}

ResidualReport residual_series(const IterateTrace& trace, std::optional<double> slack, double threshold) {
  ResidualReport rep;
  rep.threshold = threshold;
  double min_lambda = 1.0;
  for (double l : trace.lambdas) min_lambda = std::min(min_lambda, l);
  // Each iterate carries up to inner_tol of solver error, which the residual
  // divides by lambda_n.
  rep.slack = slack.value_or(10.0 * trace.inner_tol / min_lambda);
  const auto& r = trace.residuals;
  rep.max_increase = r.size() < 2 ? 0.0 : -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < r.size(); ++i) rep.max_increase = std::max(rep.max_increase, r[i] - r[i - 1]);
  rep.monotone = rep.max_increase <= rep.slack;
  rep.tail = r.empty() ? 0.0 : r.back();
  rep.vanishing = rep.tail < threshold;
  return rep;
}

BoundednessReport boundedness_verdict(const ProductSpace& space, const IterateTrace& trace, double cap,
                                      double step_tol) {
  BoundednessReport rep;
  const auto& z = trace.iterates;
  if (z.empty()) return rep;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double d = space.distance(z[i], z.front());
    if (!std::isfinite(d) || d > cap) {
      if (!rep.first_escape) rep.first_escape = i + 1;
    }
    rep.max_distance = std::max(rep.max_distance, std::isfinite(d) ? d : std::numeric_limits<double>::infinity());
  }
  if (rep.first_escape) {
    rep.verdict = Verdict::escaped;
    return rep;
  }
  // A run that met its stopping rule has settled by definition.
  if (trace.stop == StopReason::step_tol) {
    rep.verdict = Verdict::bounded;
    return rep;
  }
  if (z.size() < 8) return rep;
  const std::size_t start = z.size() - std::max<std::size_t>(2, z.size() / 4);
  for (std::size_t i = start; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) rep.tail_diameter = std::max(rep.tail_diameter, space.distance(z[i], z[j]));
  }
  const double allowance = std::max(step_tol * static_cast<double>(z.size()), rep.max_distance / 10.0);
  rep.verdict = rep.tail_diameter < allowance ? Verdict::bounded : Verdict::inconclusive;
  return rep;
}

DeltaProbeReport delta_report(const ProductSpace& space, const IterateTrace& trace,
                              const std::vector<ProductPoint>& anchors, double tol) {
  if (trace.iterates.empty()) throw Error(ErrorKind::empty_tail, "empty trace");
  const std::size_t half = trace.iterates.size() / 2;
  std::span<const ProductPoint> tail(trace.iterates.data() + half, trace.iterates.size() - half);
  DeltaProbeOptions o;
  o.tol = tol;
  return delta_convergence_probe(space, tail, trace.iterates.back(), std::span<const ProductPoint>(anchors), o);
}

}  // namespace gm
