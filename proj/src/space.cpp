#include "gm/space.hpp"

#include <algorithm>
#include <cmath>

namespace gm {

const char* to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::euclidean: return "euclidean";
    case SpaceKind::poincare: return "poincare";
    case SpaceKind::tree: return "tree";
  }
  return "unknown";
}

void Space::validate(const Point& p) const {
  if (!is_valid(p)) throw Error(invalid_kind(p), describe() + ": " + invalid_reason(p));
}

Point Space::geodesic(const Point& p, const Point& q, double t) const {
  validate(p);
  validate(q);
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorKind::parameter_out_of_range, "geodesic parameter " + std::to_string(t) + " not in [0,1]");
  }
  if (t == 0.0) return p;
  if (t == 1.0) return q;
  return do_geodesic(p, q, t);
}

ProductSpace::ProductSpace(SpaceHandle left, SpaceHandle right, ProductMetric metric)
    : left_(std::move(left)), right_(std::move(right)), metric_(metric) {}

double ProductSpace::distance(const ProductPoint& z, const ProductPoint& w, ProductMetric m) const {
  const double dx = left_->distance(z.x, w.x);
  const double dy = right_->distance(z.y, w.y);
  return m == ProductMetric::ell2 ? std::hypot(dx, dy) : std::max(dx, dy);
}

std::vector<LineBlock<ProductPoint>> ProductSpace::search_blocks(const ProductPoint& at) const {
  std::vector<LineBlock<ProductPoint>> out;
  for (auto& block : left_->search_blocks(at.x)) {
    LineBlock<ProductPoint> lifted{{}, block.exhaustive};
    for (auto& line : block.lines) {
      lifted.lines.push_back({[f = line.at, y = at.y](double s) { return ProductPoint{f(s), y}; }, line.lo, line.hi});
    }
    out.push_back(std::move(lifted));
  }
  for (auto& block : right_->search_blocks(at.y)) {
    LineBlock<ProductPoint> lifted{{}, block.exhaustive};
    for (auto& line : block.lines) {
      lifted.lines.push_back({[f = line.at, x = at.x](double s) { return ProductPoint{x, f(s)}; }, line.lo, line.hi});
    }
    out.push_back(std::move(lifted));
  }
  return out;
}

}  // namespace gm
