#pragma once

#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "gm/space.hpp"

namespace gm {

struct Unconstrained {};
/// Closed ball of the given radius centred at the origin.
struct BallConstraint {
  double radius = 1.0;
};
struct BoxConstraint {
  std::vector<double> lower;
  std::vector<double> upper;
};
/// The probability simplex {p >= 0, sum p = 1}.
struct SimplexConstraint {};

using EuclideanConstraint = std::variant<Unconstrained, BallConstraint, BoxConstraint, SimplexConstraint>;

/// R^n, or a closed convex subset of it. Geodesics are affine segments.
class EuclideanSpace final : public Space {
 public:
  static constexpr double kMembershipTol = 1e-12;

  explicit EuclideanSpace(std::size_t dim, EuclideanConstraint constraint = Unconstrained{});

  std::size_t dim() const { return dim_; }
  const EuclideanConstraint& constraint() const { return constraint_; }
  bool is_constrained() const { return !std::holds_alternative<Unconstrained>(constraint_); }
  bool is_bounded() const;

  /// Constraint membership within kMembershipTol. Throws dimension-mismatch.
  bool contains(const Point& p) const;
  /// Nearest point of the constraint set.
  Point project(const Point& p) const;

  SpaceKind kind() const override { return SpaceKind::euclidean; }
  std::string describe() const override;
  bool is_valid(const Point& p) const override;
  std::vector<LineBlock<Point>> search_blocks(const Point& at) const override;
  std::size_t unit_dim() const override { return dim_; }
  Point from_unit(std::span<const double> u, double scale) const override;
  std::optional<Point> point_at_distance(const Point& from, double r, std::span<const double> u) const override;
  double tolerance() const override { return 1e-9; }

 protected:
  std::string invalid_reason(const Point& p) const override;
  ErrorKind invalid_kind(const Point& p) const override;
  double do_distance(const Point& p, const Point& q) const override;
  Point do_geodesic(const Point& p, const Point& q, double t) const override;

 private:
  std::size_t dim_;
  EuclideanConstraint constraint_;
};

/// Free function form of EuclideanSpace::contains.
bool constrained_euclidean_membership(const EuclideanSpace& space, const Point& p);

/// Poincare ball model of hyperbolic n-space (curvature -1).
///
/// Points are coordinate vectors of Euclidean norm below 1 - kMargin. Geodesics
/// are computed by Mobius-translating p to the origin, moving radially by the
/// hyperbolic fraction t of d(p,q), and translating back. Results that would
/// leave the margin raise point-on-boundary instead of being clamped.
class PoincareBall final : public Space {
 public:
  static constexpr double kMargin = 1e-9;

  explicit PoincareBall(std::size_t dim);

  std::size_t dim() const { return dim_; }

  /// Mobius addition p (+) q.
  static std::vector<double> mobius_add(std::span<const double> p, std::span<const double> q);
  /// d(0,p) = 2 artanh |p|.
  static double distance_from_origin(const Point& p);

  SpaceKind kind() const override { return SpaceKind::poincare; }
  std::string describe() const override;
  bool is_valid(const Point& p) const override;
  std::vector<LineBlock<Point>> search_blocks(const Point& at) const override;
  std::size_t unit_dim() const override { return dim_ + 1; }
  Point from_unit(std::span<const double> u, double scale) const override;
  std::optional<Point> point_at_distance(const Point& from, double r, std::span<const double> u) const override;
  double tolerance() const override { return 1e-7; }

 protected:
  std::string invalid_reason(const Point& p) const override;
  ErrorKind invalid_kind(const Point& p) const override;
  double do_distance(const Point& p, const Point& q) const override;
  Point do_geodesic(const Point& p, const Point& q, double t) const override;

 private:
  std::size_t dim_;
};

struct TreeEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double length = 1.0;
};

/// A finite tree with positive edge lengths, viewed as a metric (R-)tree.
///
/// A point is encoded as {edge id, offset} where the offset is the arc length
/// from the edge's first endpoint `u`. Points sitting on a vertex are
/// normalized to the incident edge with the smallest id so that equal points
/// compare equal.
class MetricTree final : public Space {
 public:
  MetricTree(std::size_t vertex_count, std::vector<TreeEdge> edges);

  static Point point(std::size_t edge, double offset) { return Point{static_cast<double>(edge), offset}; }

  std::size_t vertex_count() const { return vertex_count_; }
  const std::vector<TreeEdge>& edges() const { return edges_; }
  double vertex_distance(std::size_t a, std::size_t b) const { return dist_[a * vertex_count_ + b]; }
  Point vertex_point(std::size_t v) const;
  Point canonical(const Point& p) const;
  std::vector<std::size_t> leaves() const;

  SpaceKind kind() const override { return SpaceKind::tree; }
  std::string describe() const override;
  bool is_valid(const Point& p) const override;
  std::vector<LineBlock<Point>> search_blocks(const Point& at) const override;
  std::size_t unit_dim() const override { return 2; }
  Point from_unit(std::span<const double> u, double scale) const override;
  std::optional<Point> point_at_distance(const Point& from, double r, std::span<const double> u) const override;
  double tolerance() const override { return 1e-9; }

 protected:
  std::string invalid_reason(const Point& p) const override;
  ErrorKind invalid_kind(const Point& p) const override;
  double do_distance(const Point& p, const Point& q) const override;
  Point do_geodesic(const Point& p, const Point& q, double t) const override;

 private:
  struct Route {
    std::size_t from_vertex;  // endpoint of p's edge the path leaves through
    std::size_t to_vertex;    // endpoint of q's edge the path enters through
    double length;
  };
  Route route(const Point& p, const Point& q) const;
  std::size_t edge_between(std::size_t a, std::size_t b) const;
  Point on_edge_from(std::size_t edge, std::size_t from_vertex, double arc) const;

  std::size_t vertex_count_;
  std::vector<TreeEdge> edges_;
  std::vector<double> dist_;
  std::vector<std::size_t> next_hop_;
  std::vector<std::vector<std::size_t>> incident_;
};

}  // namespace gm
