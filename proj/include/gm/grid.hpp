#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "gm/space.hpp"

namespace gm {

/// Axis-aligned lattice with `count` samples per axis (Euclidean backends).
struct LatticeGrid {
  std::vector<double> lower;
  std::vector<double> upper;
  std::size_t count = 11;
};

/// Compositions of `denominator` into dim parts, i.e. every point of the
/// probability simplex whose coordinates are multiples of 1/denominator.
struct SimplexGrid {
  std::size_t denominator = 10;
};

/// Poincare ball: the origin plus `radial - 1` rings out to hyperbolic radius
/// `radius_cap`, each with `angular` points (dimension 2). In dimension 1 the
/// radial samples span [-radius_cap, radius_cap].
struct RadialGrid {
  double radius_cap = 2.0;
  std::size_t radial = 9;
  std::size_t angular = 16;
};

/// Metric tree: each edge split into `subdivisions` equal pieces.
struct TreeGrid {
  std::size_t subdivisions = 8;
};

using GridSpec = std::variant<LatticeGrid, SimplexGrid, RadialGrid, TreeGrid>;

/// Enumerates the grid in a fixed order. Throws invalid-grid when the grid does
/// not fit the backend or has fewer than two samples per axis/edge.
std::vector<Point> grid_points(const Space& space, const GridSpec& grid);

/// Number of points grid_points would produce, without building them.
std::size_t grid_size(const Space& space, const GridSpec& grid);

/// Largest spacing between neighbouring samples, in the backend's metric.
double grid_step(const Space& space, const GridSpec& grid);

/// Same grid family with `resolution` samples per axis (lattice), per ring and
/// ring count (radial), denominator resolution-1 (simplex) or resolution-1
/// pieces per edge (tree).
GridSpec with_resolution(const GridSpec& grid, std::size_t resolution);

}  // namespace gm
