#pragma once

#include <memory>

#include "gm/sampling.hpp"
#include "gm/spaces.hpp"

namespace gm::testing {

inline std::shared_ptr<const EuclideanSpace> euclid(std::size_t n) { return std::make_shared<EuclideanSpace>(n); }

inline std::shared_ptr<const PoincareBall> poincare(std::size_t n) { return std::make_shared<PoincareBall>(n); }

/// Star with centre 0 and leaves 1, 2, 3 (edge lengths 2, 2, 1).
inline std::shared_ptr<const MetricTree> star_tree() {
  return std::make_shared<MetricTree>(4, std::vector<TreeEdge>{{0, 1, 2.0}, {0, 2, 2.0}, {0, 3, 1.0}});
}

/// Five vertices, one branch vertex of degree 3 and a longer arm.
inline std::shared_ptr<const MetricTree> sample_tree() {
  return std::make_shared<MetricTree>(
      5, std::vector<TreeEdge>{{0, 1, 1.0}, {0, 2, 1.5}, {0, 3, 0.8}, {3, 4, 1.2}});
}

}  // namespace gm::testing
