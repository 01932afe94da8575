#include <algorithm>
#include <cmath>
#include <numeric>

#include "gm/spaces.hpp"

namespace gm {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

std::vector<double> negated(std::span<const double> p) {
  std::vector<double> out(p.begin(), p.end());
  for (double& x : out) x = -x;
  return out;
}

}  // namespace

PoincareBall::PoincareBall(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) throw Error(ErrorKind::invalid_config, "poincare dimension must be positive");
}

std::vector<double> PoincareBall::mobius_add(std::span<const double> p, std::span<const double> q) {
  const double pq = dot(p, q);
  const double p2 = dot(p, p);
  const double q2 = dot(q, q);
  const double a = 1.0 + 2.0 * pq + q2;
  const double b = 1.0 - p2;
  const double den = 1.0 + 2.0 * pq + p2 * q2;
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = (a * p[i] + b * q[i]) / den;
  return out;
}

double PoincareBall::distance_from_origin(const Point& p) { return 2.0 * std::atanh(std::sqrt(dot(p.coords, p.coords))); }

std::string PoincareBall::describe() const { return "poincare(" + std::to_string(dim_) + ")"; }

bool PoincareBall::is_valid(const Point& p) const {
  if (p.size() != dim_) return false;
  for (double x : p.coords) {
    if (!std::isfinite(x)) return false;
  }
  return std::sqrt(dot(p.coords, p.coords)) < 1.0 - kMargin;
}

ErrorKind PoincareBall::invalid_kind(const Point& p) const {
  if (p.size() != dim_) return ErrorKind::dimension_mismatch;
  for (double x : p.coords) {
    if (!std::isfinite(x)) return ErrorKind::invalid_point;
  }
  return ErrorKind::point_on_boundary;
}

std::string PoincareBall::invalid_reason(const Point& p) const {
  if (p.size() != dim_) return "expected " + std::to_string(dim_) + " coordinates, got " + std::to_string(p.size());
  return "norm must stay below 1 - 1e-9";
}

double PoincareBall::do_distance(const Point& p, const Point& q) const {
  double diff2 = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double d = p[i] - q[i];
    diff2 += d * d;
  }
  const double x = 2.0 * diff2 / ((1.0 - dot(p.coords, p.coords)) * (1.0 - dot(q.coords, q.coords)));
  // arcosh(1 + x) without the cancellation near x = 0.
  return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

Point PoincareBall::do_geodesic(const Point& p, const Point& q, double t) const {
  std::vector<double> w = mobius_add(negated(p.coords), q.coords);
  const double nw = std::sqrt(dot(w, w));
  if (nw == 0.0) return p;
  const double scale = std::tanh(t * std::atanh(nw)) / nw;
  for (double& x : w) x *= scale;
  Point out(mobius_add(p.coords, w));
  if (!is_valid(out)) throw Error(ErrorKind::point_on_boundary, "geodesic left the safety margin");
  return out;
}

std::vector<LineBlock<Point>> PoincareBall::search_blocks(const Point& at) const {
  // Geodesic through `at` tangent to each coordinate axis, by arc length.
  LineBlock<Point> block;
  for (std::size_t i = 0; i < dim_; ++i) {
    block.lines.push_back({[at, i, n = dim_](double s) {
      std::vector<double> v(n, 0.0);
      v[i] = std::tanh(s / 2.0);
      return Point(mobius_add(at.coords, v));
    }});
  }
  return {std::move(block)};
}

Point PoincareBall::from_unit(std::span<const double> u, double scale) const {
  if (dim_ == 1) return Point{std::tanh(scale * (2.0 * u[0] - 1.0) / 2.0)};
  std::vector<double> dir(dim_);
  for (std::size_t i = 0; i < dim_; ++i) dir[i] = 2.0 * u[i + 1] - 1.0;
  double n = std::sqrt(dot(dir, dir));
  if (n == 0.0) {
    dir[0] = 1.0;
    n = 1.0;
  }
  const double r = std::tanh(u[0] * scale / 2.0);
  for (double& x : dir) x *= r / n;
  return Point(std::move(dir));
}

std::optional<Point> PoincareBall::point_at_distance(const Point& from, double r, std::span<const double> u) const {
  std::vector<double> dir(dim_);
  for (std::size_t i = 0; i < dim_; ++i) dir[i] = 2.0 * u[i + 1] - 1.0;
  double n = std::sqrt(dot(dir, dir));
  if (n == 0.0) {
    dir[0] = 1.0;
    n = 1.0;
  }
  const double radial = std::tanh(r / 2.0);
  for (double& x : dir) x *= radial / n;
  Point q(mobius_add(from.coords, dir));
  if (!is_valid(q)) return std::nullopt;
  return q;
}

}  // namespace gm
