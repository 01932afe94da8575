#include "gm/resolvent.hpp"

#include <cmath>
#include <limits>

#include "gm/line_search.hpp"
#include "gm/sampling.hpp"

namespace gm {

const char* to_string(ResolventMethod m) {
  switch (m) {
    case ResolventMethod::automatic: return "automatic";
    case ResolventMethod::closed_form: return "closed-form";
    case ResolventMethod::alternating: return "alternating";
  }
  return "unknown";
}

namespace {

constexpr double kMinDamping = 0x1.0p-12;

double sq(double t) { return t * t; }

// Saddle residual of g(u,v) = lambda f(u,v) - d(u,x)^2/2 + d(v,y)^2/2 at r
// over the base point and points at a few small radii around r.
double regularized_residual(const SaddleProblem& p, const ProductPoint& base, double lambda, const ProductPoint& r) {
  const Space& X = p.X();
  const Space& Y = p.Y();
  auto g = [&](const Point& u, const Point& v) {
    return lambda * p.f(u, v) - sq(X.distance(u, base.x)) / 2.0 + sq(Y.distance(v, base.y)) / 2.0;
  };
  auto around = [](const Space& S, const Point& c, const Point& extra) {
    std::vector<Point> pts{extra};
    for (double rad : {1e-4, 1e-3, 1e-2, 1e-1}) {
      for (std::uint64_t k = 1; k <= 4; ++k) {
        if (auto q = S.point_at_distance(c, rad, halton(k, S.unit_dim()))) pts.push_back(*q);
      }
    }
    return pts;
  };
  const double center = g(r.x, r.y);
  double up = 0.0;
  for (const Point& u : around(X, r.x, base.x)) up = std::max(up, g(u, r.y) - center);
  double down = 0.0;
  for (const Point& v : around(Y, r.y, base.y)) down = std::max(down, center - g(r.x, v));
  return up + down;
}

ResolventResult alternating(const SaddleProblem& p, const ProductPoint& base, double lambda,
                            const ResolventOptions& opts) {
  const Space& X = p.X();
  const Space& Y = p.Y();
  MinimizeOptions mo;
  mo.move_tol = std::min(1e-12, opts.inner_tol * 1e-3);

  // u -> argmax lambda f(u,v) - d(u,x)^2/2 and v -> argmin lambda f(u,v) + d(v,y)^2/2;
  // both objectives are strongly geodesically convex after the sign flip.
  auto best_x = [&](const Point& v, const Point& start) {
    auto obj = [&](const Point& u) { return -lambda * p.f(u, v) + sq(X.distance(u, base.x)) / 2.0; };
    return minimize_geodesic(X, obj, start, mo).point;
  };
  auto best_y = [&](const Point& u, const Point& start) {
    auto obj = [&](const Point& v) { return lambda * p.f(u, v) + sq(Y.distance(v, base.y)) / 2.0; };
    return minimize_geodesic(Y, obj, start, mo).point;
  };

  const ProductPoint start = opts.init.value_or(base);
  p.space.validate(start);
  Point u = start.x;
  Point v = start.y;

  // Fixed-point iteration on v -> best_y(best_x(v)). Near a solution this map
  // has a real nonpositive spectrum, so averaging with a small enough weight
  // turns it into a contraction; the weight is halved whenever two sweeps in
  // a row fail to shrink the residual by the factor it should give.
  ResolventResult res;
  res.method = ResolventMethod::alternating;
  res.converged = false;
  double omega = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  int strikes = 0;
  for (int k = 1; k <= opts.max_sweeps; ++k) {
    u = best_x(v, u);
    const Point vb = best_y(u, v);
    const double r = Y.distance(v, vb);
    res.sweeps_used = k;
    res.fixed_point_gap = r;
    if (r <= opts.inner_tol) {
      res.converged = true;
      break;
    }
    if (r > (1.0 - omega / 2.0) * prev) {
      if (++strikes >= 2 && omega > kMinDamping) {
        omega /= 2.0;
        strikes = 0;
      }
    } else {
      strikes = 0;
    }
    prev = r;
    v = omega == 1.0 ? vb : Y.geodesic(v, vb, omega);
  }
  res.point = {u, v};
  res.damping = omega;
  return res;
}

}  // namespace

ResolventResult resolvent(const SaddleProblem& problem, const ProductPoint& base, double lambda,
                          const ResolventOptions& opts) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::invalid_lambda, "lambda must be positive and finite, got " + std::to_string(lambda));
  }
  if (!(opts.inner_tol > 0.0) || opts.max_sweeps < 1) {
    throw Error(ErrorKind::parameter_out_of_range, "inner_tol must be positive and max_sweeps at least 1");
  }
  if (!problem.certificates.concave_convex()) {
    throw Error(ErrorKind::not_concave_convex, "resolvent needs a concave-convex problem, '" + problem.name + "' is not");
  }
  problem.space.validate(base);

  ResolventMethod method = opts.method;
  if (method == ResolventMethod::automatic) {
    method = problem.closed_form ? ResolventMethod::closed_form : ResolventMethod::alternating;
  }
  ResolventResult res;
  if (method == ResolventMethod::closed_form) {
    if (!problem.closed_form) throw Error(ErrorKind::invalid_config, "'" + problem.name + "' has no closed-form resolvent");
    res.point = problem.closed_form(base, lambda);
    res.method = ResolventMethod::closed_form;
  } else {
    res = alternating(problem, base, lambda, opts);
  }
  res.regularized_residual =
      opts.compute_residual ? regularized_residual(problem, base, lambda, res.point) : std::nan("");
  return res;
}

ProductPoint resolve(const SaddleProblem& problem, const ProductPoint& base, double lambda,
                     const ResolventOptions& opts) {
  ResolventOptions o = opts;
  o.compute_residual = false;
  ResolventResult r = resolvent(problem, base, lambda, o);
  if (!r.converged) {
    throw Error(ErrorKind::no_convergence, "resolvent of '" + problem.name + "' did not converge in " +
                                               std::to_string(r.sweeps_used) + " sweeps (gap " +
                                               std::to_string(r.fixed_point_gap) + ")");
  }
  return r.point;
}

FixedPointReport check_fixed_points(const SaddleProblem& problem, double lambda,
                                    const std::vector<ProductPoint>& candidates,
                                    const std::vector<ProductPoint>& probes, const ResolventOptions& opts,
                                    double residual_tol) {
  FixedPointReport rep;
  const double gap_tol = 10.0 * opts.inner_tol;
  for (const auto& z : candidates) {
    FixedPointRow row{z, 0.0, 0.0};
    row.gap = problem.space.distance(resolve(problem, z, lambda, opts), z);
    row.residual = saddle_residual(problem, z, probes);
    if ((row.gap <= gap_tol) != (row.residual <= residual_tol)) rep.consistent = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

double check_resolvent_inequality(const SaddleProblem& problem, double lambda, const ProductPoint& z,
                                  const ProductPoint& w, const ResolventOptions& opts) {
  const ProductSpace& S = problem.space;
  const ProductPoint r = resolve(problem, z, lambda, opts);
  const double lhs = sq(S.distance(r, w)) + sq(S.distance(r, z)) + 2.0 * lambda * (problem.f(w.x, r.y) - problem.f(r.x, w.y));
  return lhs - sq(S.distance(z, w));
}

double check_resolvent_comparison(const SaddleProblem& problem, double lambda, double mu, const ProductPoint& z,
                                  const ProductPoint& w, const ResolventOptions& opts) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw Error(ErrorKind::invalid_lambda, "mu must be positive and finite");
  const ProductSpace& S = problem.space;
  const ProductPoint rl = resolve(problem, z, lambda, opts);
  const ProductPoint rm = resolve(problem, w, mu, opts);
  const double lhs = (lambda + mu) * sq(S.distance(rl, rm)) + mu * sq(S.distance(rl, z)) + lambda * sq(S.distance(rm, w));
  const double rhs = lambda * sq(S.distance(rl, w)) + mu * sq(S.distance(rm, z));
  return lhs - rhs;
}

NonspreadingReport check_firm_nonspreading_and_nonexpansive(
    const SaddleProblem& problem, double lambda, const std::vector<std::pair<ProductPoint, ProductPoint>>& pairs,
    const ResolventOptions& opts) {
  const ProductSpace& S = problem.space;
  NonspreadingReport rep;
  rep.nonspreading = rep.nonexpansive = -std::numeric_limits<double>::infinity();
  for (const auto& [z, w] : pairs) {
    const ProductPoint rz = resolve(problem, z, lambda, opts);
    const ProductPoint rw = resolve(problem, w, lambda, opts);
    const double d = S.distance(rz, rw);
    const double lhs = 2.0 * d * d + sq(S.distance(rz, z)) + sq(S.distance(rw, w));
    const double rhs = sq(S.distance(rz, w)) + sq(S.distance(rw, z));
    rep.nonspreading = std::max(rep.nonspreading, lhs - rhs);
    rep.nonexpansive = std::max(rep.nonexpansive, d - S.distance(z, w));
    ++rep.pairs;
  }
  return rep;
}

double check_step_estimate(const SaddleProblem& problem, double lambda, double mu, const ProductPoint& z,
                           const ResolventOptions& opts) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw Error(ErrorKind::invalid_lambda, "mu must be positive and finite");
  const ProductSpace& S = problem.space;
  const ProductPoint rl = resolve(problem, z, lambda, opts);
  const ProductPoint rml = resolve(problem, rl, mu, opts);
  return S.distance(rml, rl) / mu - S.distance(rl, z) / lambda;
}

}  // namespace gm
