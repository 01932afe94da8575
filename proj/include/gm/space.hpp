#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gm/errors.hpp"

namespace gm {

/// Backend-specific coordinates. Euclidean and Poincare points store their
/// Cartesian coordinates; metric-tree points store {edge id, offset}.
struct Point {
  std::vector<double> coords;

  Point() = default;
  Point(std::initializer_list<double> c) : coords(c) {}
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  double& operator[](std::size_t i) { return coords[i]; }

  friend bool operator==(const Point&, const Point&) = default;
};

/// A geodesic line through a point, parameterized by arc length s in [lo, hi].
/// Either bound may be infinite. `at(0)` is the point the line was built from
/// (for lines that contain it).
template <class P>
struct GeodesicLine {
  std::function<P(double)> at;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

/// Lines used by the generic minimizer. When `exhaustive` is set, the lines
/// cover the whole factor they live in, so the best line minimum over the
/// block is the exact minimum over that factor for a geodesically convex
/// objective.
template <class P>
struct LineBlock {
  std::vector<GeodesicLine<P>> lines;
  bool exhaustive = false;
};

enum class SpaceKind { euclidean, poincare, tree };

const char* to_string(SpaceKind kind);

/// Immutable geodesic-space backend. All public members validate their inputs
/// and throw gm::Error; the protected do_* hooks may assume valid points.
class Space {
 public:
  using point_type = Point;

  virtual ~Space() = default;

  virtual SpaceKind kind() const = 0;
  virtual std::string describe() const = 0;

  virtual bool is_valid(const Point& p) const = 0;
  void validate(const Point& p) const;

  double distance(const Point& p, const Point& q) const {
    validate(p);
    validate(q);
    return do_distance(p, q);
  }

  /// Point at fraction t of the way from p to q along the unique geodesic.
  Point geodesic(const Point& p, const Point& q, double t) const;

  virtual std::vector<LineBlock<Point>> search_blocks(const Point& at) const = 0;

  /// Number of uniforms consumed by from_unit.
  virtual std::size_t unit_dim() const = 0;

  /// Maps uniforms in [0,1)^unit_dim to a point. `scale` bounds the sample
  /// region on unbounded backends (box half-width / hyperbolic radius).
  virtual Point from_unit(std::span<const double> u, double scale) const = 0;

  /// A point at distance r from `from` in a direction picked by the uniforms
  /// `u` (unit_dim of them), or nullopt when no such point exists.
  virtual std::optional<Point> point_at_distance(const Point& from, double r,
                                                 std::span<const double> u) const = 0;

  /// Default absolute tolerance for geometric checks on this backend.
  virtual double tolerance() const = 0;

 protected:
  virtual std::string invalid_reason(const Point& p) const = 0;
  virtual ErrorKind invalid_kind(const Point&) const { return ErrorKind::invalid_point; }
  virtual double do_distance(const Point& p, const Point& q) const = 0;
  virtual Point do_geodesic(const Point& p, const Point& q, double t) const = 0;
};

using SpaceHandle = std::shared_ptr<const Space>;

/// Anything with a metric and geodesics: a Space, a ProductSpace, or a test
/// double. The generic geometry routines are written against this.
template <class S>
concept GeodesicSpace = requires(const S& s, const typename S::point_type& p, double t) {
  { s.distance(p, p) } -> std::convertible_to<double>;
  { s.geodesic(p, p, t) } -> std::same_as<typename S::point_type>;
  { s.is_valid(p) } -> std::convertible_to<bool>;
};

template <class S>
concept MinimizableSpace = GeodesicSpace<S> && requires(const S& s, const typename S::point_type& p) {
  { s.search_blocks(p) } -> std::same_as<std::vector<LineBlock<typename S::point_type>>>;
};

struct ProductPoint {
  Point x;
  Point y;

  friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

enum class ProductMetric { ell2, ell_inf };

/// The product X x Y with the l2 metric sqrt(dX^2 + dY^2) (default) or the
/// l-infinity metric max(dX, dY). Geodesics are componentwise.
class ProductSpace {
 public:
  using point_type = ProductPoint;

  ProductSpace(SpaceHandle left, SpaceHandle right, ProductMetric metric = ProductMetric::ell2);

  const Space& left() const { return *left_; }
  const Space& right() const { return *right_; }
  const SpaceHandle& left_handle() const { return left_; }
  const SpaceHandle& right_handle() const { return right_; }
  ProductMetric metric() const { return metric_; }

  bool is_valid(const ProductPoint& z) const { return left_->is_valid(z.x) && right_->is_valid(z.y); }
  void validate(const ProductPoint& z) const {
    left_->validate(z.x);
    right_->validate(z.y);
  }

  double distance(const ProductPoint& z, const ProductPoint& w) const { return distance(z, w, metric_); }
  double distance(const ProductPoint& z, const ProductPoint& w, ProductMetric m) const;
  ProductPoint geodesic(const ProductPoint& z, const ProductPoint& w, double t) const {
    return {left_->geodesic(z.x, w.x, t), right_->geodesic(z.y, w.y, t)};
  }
  std::vector<LineBlock<ProductPoint>> search_blocks(const ProductPoint& at) const;

  double tolerance() const { return std::max(left_->tolerance(), right_->tolerance()); }

 private:
  SpaceHandle left_;
  SpaceHandle right_;
  ProductMetric metric_;
};

}  // namespace gm
