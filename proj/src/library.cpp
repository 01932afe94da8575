#include <cmath>
#include <memory>

#include "gm/saddle.hpp"
#include "gm/spaces.hpp"

namespace gm {
namespace {

SpaceHandle real_line(std::size_t n = 1) { return std::make_shared<EuclideanSpace>(n); }
SpaceHandle unit_box(std::size_t n = 1) {
  return std::make_shared<EuclideanSpace>(n, BoxConstraint{std::vector<double>(n, -1.0), std::vector<double>(n, 1.0)});
}
SpaceHandle simplex(std::size_t n) { return std::make_shared<EuclideanSpace>(n, SimplexConstraint{}); }

LatticeGrid box_grid(std::size_t n = 1) { return {std::vector<double>(n, -1.0), std::vector<double>(n, 1.0), 11}; }

Certificates concave_convex() { return {true, true, true, true, true, true}; }

double sq(double t) { return t * t; }

SaddleProblem zero() {
  return {.name = "zero",
          .space = ProductSpace(real_line(), real_line()),
          .f = [](const Point&, const Point&) { return 0.0; },
          .certificates = concave_convex(),
          .known_saddle = ProductPoint{{0.0}, {0.0}},
          .closed_form = [](const ProductPoint& z, double) { return z; },
          .grid_x = box_grid(),
          .grid_y = box_grid(),
          .anchors = {{{0.0}, {0.0}}, {{1.0}, {-1.0}}},
          .notes = "every point is a saddle point",
          .boxed = true};
}

SaddleProblem bilinear() {
  return {.name = "bilinear",
          .space = ProductSpace(real_line(), real_line()),
          .f = [](const Point& x, const Point& y) { return x[0] * y[0]; },
          .certificates = concave_convex(),
          .known_saddle = ProductPoint{{0.0}, {0.0}},
          .closed_form =
              [](const ProductPoint& z, double l) {
                const double x = z.x[0], y = z.y[0];
                return ProductPoint{{(x + l * y) / (1.0 + l * l)}, {(y - l * x) / (1.0 + l * l)}};
              },
          .grid_x = box_grid(),
          .grid_y = box_grid(),
          .anchors = {{{0.0}, {0.0}}, {{1.0}, {1.0}}, {{-1.0}, {0.5}}},
          .notes = "f(u,v) = uv on R x R",
          .boxed = true};
}

SaddleProblem bilinear_box() {
  return {.name = "bilinear_box",
          .space = ProductSpace(unit_box(), unit_box()),
          .f = [](const Point& x, const Point& y) { return x[0] * y[0]; },
          .certificates = concave_convex(),
          .known_saddle = ProductPoint{{0.0}, {0.0}},
          .grid_x = box_grid(),
          .grid_y = box_grid(),
          .scale_x = 1.0,
          .scale_y = 1.0,
          .anchors = {{{0.0}, {0.0}}, {{1.0}, {1.0}}, {{-1.0}, {0.5}}},
          .notes = "f(u,v) = uv on [-1,1] x [-1,1]; resolvent by the generic solver"};
}

SaddleProblem quadratic_coupled() {
  return {.name = "quadratic_coupled",
          .space = ProductSpace(unit_box(), unit_box()),
          .f = [](const Point& x, const Point& y) { return -sq(x[0]) + sq(y[0]) + x[0] * y[0]; },
          .certificates = concave_convex(),
          .known_saddle = ProductPoint{{0.0}, {0.0}},
          .grid_x = box_grid(),
          .grid_y = box_grid(),
          .scale_x = 1.0,
          .scale_y = 1.0,
          .anchors = {{{0.0}, {0.0}}, {{0.5}, {-0.5}}},
          .notes = "f(x,y) = -x^2 + y^2 + xy on [-1,1] x [-1,1]"};
}

// x^T A y with x the maximizing and y the minimizing mixed strategy.
SaddleProblem matrix_game(std::string name, double a00, double a01, double a10, double a11, ProductPoint saddle,
                          std::string notes) {
  auto f = [=](const Point& x, const Point& y) {
    return x[0] * (a00 * y[0] + a01 * y[1]) + x[1] * (a10 * y[0] + a11 * y[1]);
  };
  return {.name = std::move(name),
          .space = ProductSpace(simplex(2), simplex(2)),
          .f = f,
          .certificates = concave_convex(),
          .known_saddle = saddle,
          .grid_x = SimplexGrid{100},
          .grid_y = SimplexGrid{100},
          .scale_x = 1.0,
          .scale_y = 1.0,
          .anchors = {saddle, {{0.5, 0.5}, {0.5, 0.5}}, {{0.0, 1.0}, {0.0, 1.0}}},
          .notes = std::move(notes)};
}

SaddleProblem quadratic() {
  constexpr double a = 0.3, b = -0.2;
  return {.name = "quadratic",
          .space = ProductSpace(real_line(), real_line()),
          .f = [](const Point& x, const Point& y) { return -sq(x[0] - a) + sq(y[0] - b); },
          .certificates = concave_convex(),
          .known_saddle = ProductPoint{{a}, {b}},
          .closed_form =
              [](const ProductPoint& z, double l) {
                return ProductPoint{{(z.x[0] + 2.0 * l * a) / (1.0 + 2.0 * l)},
                                    {(z.y[0] + 2.0 * l * b) / (1.0 + 2.0 * l)}};
              },
          .grid_x = box_grid(),
          .grid_y = box_grid(),
          .anchors = {{{a}, {b}}, {{-1.0}, {1.0}}},
          .notes = "-(x-a)^2 + (y-b)^2 on R x R, a = 0.3, b = -0.2",
          .boxed = true};
}

SaddleProblem quadratic2d() {
  static const Point a{0.3, -0.1};
  static const Point b{-0.2, 0.4};
  auto dist2 = [](const Point& p, const Point& q) { return sq(p[0] - q[0]) + sq(p[1] - q[1]); };
  return {.name = "quadratic2d",
          .space = ProductSpace(real_line(2), real_line(2)),
          .f = [=](const Point& x, const Point& y) { return -dist2(x, a) + dist2(y, b); },
          .certificates = concave_convex(),
          .known_saddle = ProductPoint{a, b},
          .closed_form =
              [](const ProductPoint& z, double l) {
                ProductPoint r = z;
                for (std::size_t i = 0; i < 2; ++i) {
                  r.x[i] = (z.x[i] + 2.0 * l * a[i]) / (1.0 + 2.0 * l);
                  r.y[i] = (z.y[i] + 2.0 * l * b[i]) / (1.0 + 2.0 * l);
                }
                return r;
              },
          .grid_x = box_grid(2),
          .grid_y = box_grid(2),
          .anchors = {{a, b}, {{1.0, 1.0}, {-1.0, 0.0}}},
          .notes = "-|x-a|^2 + |y-b|^2 on R^2 x R^2",
          .boxed = true};
}

SaddleProblem sion_quasi() {
  constexpr double a = 0.2, b = -0.3;
  return {.name = "sion_quasi",
          .space = ProductSpace(unit_box(), unit_box()),
          .f = [](const Point& x, const Point& y) { return std::sqrt(std::abs(y[0] - b)) - std::sqrt(std::abs(x[0] - a)); },
          .certificates = {false, false, true, true, true, true},
          .known_saddle = ProductPoint{{a}, {b}},
          .grid_x = box_grid(),
          .grid_y = box_grid(),
          .scale_x = 1.0,
          .scale_y = 1.0,
          .anchors = {{{a}, {b}}},
          .notes = "sqrt d(y,b) - sqrt d(x,a): quasi-concave-convex, not concave-convex"};
}

SaddleProblem hyperbolic() {
  auto X = std::make_shared<PoincareBall>(2);
  auto Y = std::make_shared<PoincareBall>(2);
  static const Point a{0.2, -0.1};
  static const Point b{-0.3, 0.25};
  return {.name = "hyperbolic",
          .space = ProductSpace(X, Y),
          .f = [X, Y](const Point& x, const Point& y) { return sq(Y->distance(y, b)) / 2.0 - sq(X->distance(x, a)) / 2.0; },
          .certificates = concave_convex(),
          .known_saddle = ProductPoint{a, b},
          .closed_form =
              [X, Y](const ProductPoint& z, double l) {
                const double t = l / (1.0 + l);
                return ProductPoint{X->geodesic(z.x, a, t), Y->geodesic(z.y, b, t)};
              },
          .grid_x = RadialGrid{},
          .grid_y = RadialGrid{},
          .anchors = {{a, b}, {{0.0, 0.0}, {0.0, 0.0}}, {{0.5, 0.0}, {0.0, -0.5}}},
          .notes = "d(y,b)^2/2 - d(x,a)^2/2 on two Poincare disks",
          .boxed = true};
}

SaddleProblem tree() {
  const std::vector<TreeEdge> edges{{0, 1, 1.0}, {0, 2, 1.5}, {0, 3, 0.8}, {3, 4, 1.2}};
  auto X = std::make_shared<MetricTree>(5, edges);
  auto Y = std::make_shared<MetricTree>(5, edges);
  static const Point a = MetricTree::point(1, 0.7);
  static const Point b = MetricTree::point(3, 0.5);
  return {.name = "tree",
          .space = ProductSpace(X, Y),
          .f = [X, Y](const Point& x, const Point& y) { return sq(Y->distance(y, b)) / 2.0 - sq(X->distance(x, a)) / 2.0; },
          .certificates = concave_convex(),
          .known_saddle = ProductPoint{a, b},
          .closed_form =
              [X, Y](const ProductPoint& z, double l) {
                const double t = l / (1.0 + l);
                return ProductPoint{X->geodesic(z.x, a, t), Y->geodesic(z.y, b, t)};
              },
          .grid_x = TreeGrid{},
          .grid_y = TreeGrid{},
          .anchors = {{a, b}, {X->vertex_point(0), Y->vertex_point(4)}},
          .notes = "d(y,b)^2/2 - d(x,a)^2/2 on a five-vertex metric tree"};
}

SaddleProblem saddle_free() {
  return {.name = "saddle_free",
          .space = ProductSpace(real_line(), real_line()),
          .f = [](const Point& x, const Point& y) { return x[0] - y[0]; },
          .certificates = concave_convex(),
          .closed_form = [](const ProductPoint& z, double l) { return ProductPoint{{z.x[0] + l}, {z.y[0] + l}}; },
          .grid_x = box_grid(),
          .grid_y = box_grid(),
          .anchors = {{{0.0}, {0.0}}},
          .notes = "f(x,y) = x - y has no saddle point on R x R",
          .boxed = true};
}

SaddleProblem sion_control() {
  return {.name = "sion_control",
          .space = ProductSpace(unit_box(), unit_box()),
          .f = [](const Point& x, const Point& y) { return sq(x[0] - y[0]); },
          .certificates = {false, true, false, true, true, true},
          .grid_x = box_grid(),
          .grid_y = box_grid(),
          .scale_x = 1.0,
          .scale_y = 1.0,
          .notes = "(x-y)^2 is convex in x, so the maximizing side is not quasi-concave; gap 1"};
}

std::vector<ProblemLibraryEntry> build() {
  std::vector<ProblemLibraryEntry> lib;
  lib.push_back({zero(), "trivial"});
  lib.push_back({bilinear(), "classical bilinear saddle"});
  lib.push_back({bilinear_box(), "classical bilinear saddle, compact strategy sets"});
  lib.push_back({quadratic_coupled(), "strongly concave-convex with coupling"});
  lib.push_back({matrix_game("matrix_game", 0.0, 1.0, -1.0, 0.0, ProductPoint{{1.0, 0.0}, {1.0, 0.0}},
                             "x^T A y, A = [[0,1],[-1,0]]; pure saddle at (e1, e1), value 0"),
                 "antisymmetric 2x2 game"});
  lib.push_back({matrix_game("matching_pennies", 1.0, -1.0, -1.0, 1.0, ProductPoint{{0.5, 0.5}, {0.5, 0.5}},
                             "x^T A y, A = [[1,-1],[-1,1]]; mixed saddle at uniform strategies, value 0"),
                 "matching pennies"});
  lib.push_back({quadratic(), "separable quadratic saddle"});
  lib.push_back({quadratic2d(), "separable quadratic saddle in the plane"});
  lib.push_back({sion_quasi(), "quasi-convex example"});
  lib.push_back({hyperbolic(), "squared-distance saddle in the hyperbolic plane"});
  lib.push_back({tree(), "squared-distance saddle on a metric tree"});
  lib.push_back({saddle_free(), "no saddle point"});
  lib.push_back({sion_control(), "hypotheses fail, minimax gap"});
  return lib;
}

}  // namespace

const std::vector<ProblemLibraryEntry>& library() {
  static const std::vector<ProblemLibraryEntry> lib = build();
  return lib;
}

}  // namespace gm
