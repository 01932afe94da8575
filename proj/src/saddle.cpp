#include "gm/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gm/sampling.hpp"

namespace gm {

double bifunction(const SaddleProblem& problem, const ProductPoint& z, const ProductPoint& w) {
  problem.space.validate(z);
  problem.space.validate(w);
  return problem.f(z.x, w.y) - problem.f(w.x, z.y);
}

double saddle_residual(const SaddleProblem& problem, const ProductPoint& candidate,
                       const std::vector<ProductPoint>& probes) {
  if (probes.empty()) throw Error(ErrorKind::empty_probe_set, "saddle residual needs at least one probe");
  problem.space.validate(candidate);
  double worst = 0.0;
  for (const auto& w : probes) worst = std::max(worst, -bifunction(problem, candidate, w));
  return worst;
}

std::vector<ProductPoint> default_probes(const SaddleProblem& problem, std::size_t count) {
  const std::size_t nx = problem.X().unit_dim();
  const std::size_t ny = problem.Y().unit_dim();
  std::vector<ProductPoint> out;
  out.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) {
    const std::vector<double> u = halton(k, nx + ny);
    out.push_back({problem.X().from_unit(std::span(u).first(nx), problem.scale_x),
                   problem.Y().from_unit(std::span(u).subspan(nx), problem.scale_y)});
  }
  return out;
}

std::vector<ProductPoint> grid_probes(const SaddleProblem& problem) {
  const auto xs = grid_points(problem.X(), problem.grid_x);
  const auto ys = grid_points(problem.Y(), problem.grid_y);
  std::vector<ProductPoint> out;
  out.reserve(xs.size() * ys.size());
  for (const auto& x : xs) {
    for (const auto& y : ys) out.push_back({x, y});
  }
  return out;
}

CoercivityReport coercivity_probe(const SaddleProblem& problem, const Point& a, const Point& b,
                                  const std::vector<double>& escape_radii, std::size_t samples_per_radius,
                                  std::uint64_t seed) {
  problem.X().validate(a);
  problem.Y().validate(b);
  const double fab = problem.f(a, b);
  Sampler rng(seed);
  CoercivityReport rep;
  rep.samples_per_radius = samples_per_radius;
  double running = std::numeric_limits<double>::infinity();
  for (double r : escape_radii) {
    double worst = -std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < samples_per_radius; ++s) {
      // The first three samples put all of r on X, on Y, or split evenly;
      // the rest split it at a random angle.
      double theta = 0.0;
      if (s == 0) theta = 0.0;
      else if (s == 1) theta = std::numbers::pi / 2.0;
      else if (s == 2) theta = std::numbers::pi / 4.0;
      else theta = rng.uniform(0.0, std::numbers::pi / 2.0);
      const auto ux = rng.uniforms(problem.X().unit_dim());
      const auto uy = rng.uniforms(problem.Y().unit_dim());
      const double rx = r * std::cos(theta);
      const double ry = r * std::sin(theta);
      auto x = rx > 0.0 ? problem.X().point_at_distance(a, rx, ux) : std::optional<Point>(a);
      auto y = ry > 0.0 ? problem.Y().point_at_distance(b, ry, uy) : std::optional<Point>(b);
      if (!x || !y) continue;
      // f(x,b) - f(a,y), with f(a,b) subtracted and added back for accuracy
      // when both terms are large.
      const double v = (problem.f(*x, b) - fab) - (problem.f(a, *y) - fab);
      worst = std::max(worst, v);
      best = std::min(best, v);
    }
    running = std::min(running, worst);
    rep.radii.push_back(r);
    rep.worst.push_back(worst);
    rep.best.push_back(best);
    rep.running_min.push_back(running);
  }
  const auto& w = rep.worst;
  if (w.size() >= 2 && std::isfinite(w.front()) && std::isfinite(w.back())) {
    bool nonincreasing = true;
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i] > w[i - 1] + 1e-12 * (1.0 + std::abs(w[i - 1]))) nonincreasing = false;
    }
    rep.consistent = nonincreasing && w.back() < 0.0 && w.back() < w.front();
  }
  return rep;
}

bool CertificateFuzzReport::passed(const Certificates& declared) const {
  if (declared.concave_x && concave_x > tolerance) return false;
  if (declared.convex_y && convex_y > tolerance) return false;
  if (declared.quasi_concave_x && quasi_concave_x > tolerance) return false;
  if (declared.quasi_convex_y && quasi_convex_y > tolerance) return false;
  return true;
}

CertificateFuzzReport fuzz_certificates(const SaddleProblem& problem, std::size_t samples, std::uint64_t seed) {
  Sampler rng(seed);
  CertificateFuzzReport rep;
  rep.samples = samples;
  rep.concave_x = rep.convex_y = rep.quasi_concave_x = rep.quasi_convex_y = -std::numeric_limits<double>::infinity();
  const Space& X = problem.X();
  const Space& Y = problem.Y();
  for (std::size_t i = 0; i < samples; ++i) {
    const Point y = rng.point(Y, problem.scale_y);
    const Point x0 = rng.point(X, problem.scale_x);
    const Point x1 = rng.point(X, problem.scale_x);
    const double t = rng.uniform();
    const double f0 = problem.f(x0, y);
    const double f1 = problem.f(x1, y);
    const double ft = problem.f(X.geodesic(x0, x1, t), y);
    rep.concave_x = std::max(rep.concave_x, (1.0 - t) * f0 + t * f1 - ft);
    rep.quasi_concave_x = std::max(rep.quasi_concave_x, std::min(f0, f1) - ft);

    const Point x = rng.point(X, problem.scale_x);
    const Point y0 = rng.point(Y, problem.scale_y);
    const Point y1 = rng.point(Y, problem.scale_y);
    const double s = rng.uniform();
    const double g0 = problem.f(x, y0);
    const double g1 = problem.f(x, y1);
    const double gs = problem.f(x, Y.geodesic(y0, y1, s));
    rep.convex_y = std::max(rep.convex_y, gs - (1.0 - s) * g0 - s * g1);
    rep.quasi_convex_y = std::max(rep.quasi_convex_y, gs - std::max(g0, g1));
  }
  return rep;
}

const SaddleProblem& find_problem(const std::string& name) {
  for (const auto& e : library()) {
    if (e.problem.name == name) return e.problem;
  }
  throw Error(ErrorKind::invalid_config, "unknown problem '" + name + "'");
}

}  // namespace gm
