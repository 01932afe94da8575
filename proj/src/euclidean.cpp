#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gm/spaces.hpp"

namespace gm {
namespace {

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Euclidean projection onto the probability simplex (sort-based).
std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> s = v;
  std::sort(s.begin(), s.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    cumulative += s[i];
    const double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (s[i] - candidate > 0.0) theta = candidate;
  }
  for (double& x : v) x = std::max(0.0, x - theta);
  return v;
}

}  // namespace

EuclideanSpace::EuclideanSpace(std::size_t dim, EuclideanConstraint constraint)
    : dim_(dim), constraint_(std::move(constraint)) {
  if (dim_ == 0) throw Error(ErrorKind::invalid_config, "euclidean dimension must be positive");
  std::visit(Overloaded{
                 [](const Unconstrained&) {},
                 [](const BallConstraint& b) {
                   if (!(b.radius > 0.0)) throw Error(ErrorKind::invalid_config, "ball radius must be positive");
                 },
                 [this](const BoxConstraint& b) {
                   if (b.lower.size() != dim_ || b.upper.size() != dim_) {
                     throw Error(ErrorKind::dimension_mismatch, "box bounds do not match dimension");
                   }
                   for (std::size_t i = 0; i < dim_; ++i) {
                     if (!(b.lower[i] <= b.upper[i])) throw Error(ErrorKind::invalid_config, "empty box");
                   }
                 },
                 [this](const SimplexConstraint&) {
                   if (dim_ < 1) throw Error(ErrorKind::invalid_config, "simplex needs dimension >= 1");
                 },
             },
             constraint_);
}

bool EuclideanSpace::is_bounded() const { return is_constrained(); }

bool EuclideanSpace::contains(const Point& p) const {
  if (p.size() != dim_) {
    throw Error(ErrorKind::dimension_mismatch,
                "point has " + std::to_string(p.size()) + " coordinates, space has " + std::to_string(dim_));
  }
  constexpr double tol = kMembershipTol;
  return std::visit(Overloaded{
                        [](const Unconstrained&) { return true; },
                        [&](const BallConstraint& b) { return norm(p.coords) <= b.radius + tol; },
                        [&](const BoxConstraint& b) {
                          for (std::size_t i = 0; i < dim_; ++i) {
                            if (p[i] < b.lower[i] - tol || p[i] > b.upper[i] + tol) return false;
                          }
                          return true;
                        },
                        [&](const SimplexConstraint&) {
                          double sum = 0.0;
                          for (double x : p.coords) {
                            if (x < -tol) return false;
                            sum += x;
                          }
                          return std::abs(sum - 1.0) <= tol;
                        },
                    },
                    constraint_);
}

bool constrained_euclidean_membership(const EuclideanSpace& space, const Point& p) { return space.contains(p); }

Point EuclideanSpace::project(const Point& p) const {
  if (p.size() != dim_) throw Error(ErrorKind::dimension_mismatch, "projection of a point of wrong dimension");
  return std::visit(Overloaded{
                        [&](const Unconstrained&) { return p; },
                        [&](const BallConstraint& b) {
                          const double n = norm(p.coords);
                          if (n <= b.radius) return p;
                          Point out = p;
                          for (double& x : out.coords) x *= b.radius / n;
                          return out;
                        },
                        [&](const BoxConstraint& b) {
                          Point out = p;
                          for (std::size_t i = 0; i < dim_; ++i) out[i] = std::clamp(p[i], b.lower[i], b.upper[i]);
                          return out;
                        },
                        [&](const SimplexConstraint&) { return Point(project_simplex(p.coords)); },
                    },
                    constraint_);
}

std::string EuclideanSpace::describe() const {
  std::ostringstream os;
  os << "euclidean(" << dim_;
  std::visit(Overloaded{
                 [&](const Unconstrained&) {},
                 [&](const BallConstraint& b) { os << ", ball r=" << b.radius; },
                 [&](const BoxConstraint&) { os << ", box"; },
                 [&](const SimplexConstraint&) { os << ", simplex"; },
             },
             constraint_);
  os << ")";
  return os.str();
}

bool EuclideanSpace::is_valid(const Point& p) const {
  if (p.size() != dim_) return false;
  for (double x : p.coords) {
    if (!std::isfinite(x)) return false;
  }
  return contains(p);
}

ErrorKind EuclideanSpace::invalid_kind(const Point& p) const {
  return p.size() != dim_ ? ErrorKind::dimension_mismatch : ErrorKind::invalid_point;
}

std::string EuclideanSpace::invalid_reason(const Point& p) const {
  if (p.size() != dim_) return "expected " + std::to_string(dim_) + " coordinates, got " + std::to_string(p.size());
  return "point outside the constraint set or not finite";
}

double EuclideanSpace::do_distance(const Point& p, const Point& q) const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double d = p[i] - q[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Point EuclideanSpace::do_geodesic(const Point& p, const Point& q, double t) const {
  Point out = p;
  for (std::size_t i = 0; i < dim_; ++i) out[i] = (1.0 - t) * p[i] + t * q[i];
  return out;
}

std::vector<LineBlock<Point>> EuclideanSpace::search_blocks(const Point& at) const {
  LineBlock<Point> block;
  const double inf = std::numeric_limits<double>::infinity();
  auto axis_line = [&](std::size_t i, double lo, double hi) {
    return GeodesicLine<Point>{[at, i](double s) {
                                 Point q = at;
                                 q[i] += s;
                                 return q;
                               },
                               lo, hi};
  };
  std::visit(Overloaded{
                 [&](const Unconstrained&) {
                   for (std::size_t i = 0; i < dim_; ++i) block.lines.push_back(axis_line(i, -inf, inf));
                 },
                 [&](const BoxConstraint& b) {
                   for (std::size_t i = 0; i < dim_; ++i) {
                     block.lines.push_back(axis_line(i, std::min(0.0, b.lower[i] - at[i]), std::max(0.0, b.upper[i] - at[i])));
                   }
                 },
                 [&](const BallConstraint& b) {
                   const double n2 = std::inner_product(at.coords.begin(), at.coords.end(), at.coords.begin(), 0.0);
                   for (std::size_t i = 0; i < dim_; ++i) {
                     const double disc = std::sqrt(std::max(0.0, at[i] * at[i] - n2 + b.radius * b.radius));
                     block.lines.push_back(axis_line(i, std::min(0.0, -at[i] - disc), std::max(0.0, -at[i] + disc)));
                   }
                 },
                 [&](const SimplexConstraint&) {
                   // Mass transfer between two coordinates keeps the sum fixed;
                   // s is arc length along (e_i - e_j)/sqrt(2).
                   const double r2 = std::sqrt(2.0);
                   for (std::size_t i = 0; i < dim_; ++i) {
                     for (std::size_t j = i + 1; j < dim_; ++j) {
                       block.lines.push_back({[at, i, j, r2](double s) {
                                                Point q = at;
                                                const double delta = s / r2;
                                                q[i] = std::max(0.0, q[i] + delta);
                                                q[j] = std::max(0.0, q[j] - delta);
                                                return q;
                                              },
                                              -r2 * at[i], r2 * at[j]});
                     }
                   }
                 },
             },
             constraint_);
  return {std::move(block)};
}

Point EuclideanSpace::from_unit(std::span<const double> u, double scale) const {
  Point p(std::vector<double>(dim_, 0.0));
  std::visit(Overloaded{
                 [&](const Unconstrained&) {
                   for (std::size_t i = 0; i < dim_; ++i) p[i] = scale * (2.0 * u[i] - 1.0);
                 },
                 [&](const BoxConstraint& b) {
                   for (std::size_t i = 0; i < dim_; ++i) p[i] = b.lower[i] + u[i] * (b.upper[i] - b.lower[i]);
                 },
                 [&](const BallConstraint& b) {
                   const double r = std::min(b.radius, scale);
                   for (std::size_t i = 0; i < dim_; ++i) p[i] = r * (2.0 * u[i] - 1.0);
                   const double n = norm(p.coords);
                   if (n > r) {
                     for (double& x : p.coords) x *= r / n * u[0];
                   }
                 },
                 [&](const SimplexConstraint&) {
                   double sum = 0.0;
                   for (std::size_t i = 0; i < dim_; ++i) {
                     p[i] = -std::log1p(-std::min(u[i], 1.0 - 1e-16));
                     sum += p[i];
                   }
                   if (sum <= 0.0) {
                     for (double& x : p.coords) x = 1.0 / static_cast<double>(dim_);
                   } else {
                     for (double& x : p.coords) x /= sum;
                   }
                 },
             },
             constraint_);
  return p;
}

std::optional<Point> EuclideanSpace::point_at_distance(const Point& from, double r, std::span<const double> u) const {
  std::vector<double> dir(dim_);
  for (std::size_t i = 0; i < dim_; ++i) dir[i] = 2.0 * u[i] - 1.0;
  if (std::holds_alternative<SimplexConstraint>(constraint_)) {
    const double mean = std::accumulate(dir.begin(), dir.end(), 0.0) / static_cast<double>(dim_);
    for (double& x : dir) x -= mean;
  }
  double n = norm(dir);
  if (n == 0.0) {
    if (std::holds_alternative<SimplexConstraint>(constraint_)) return std::nullopt;
    dir.assign(dim_, 0.0);
    dir[0] = 1.0;
    n = 1.0;
  }
  Point q = from;
  for (std::size_t i = 0; i < dim_; ++i) q[i] += r * dir[i] / n;
  if (!is_valid(q)) return std::nullopt;
  return q;
}

}  // namespace gm
