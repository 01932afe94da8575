#include "gm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <utility>

#include "gm/spaces.hpp"

namespace gm {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void bad_grid(const std::string& why) { throw Error(ErrorKind::invalid_grid, why); }

template <class T>
const T& backend_as(const Space& space, const char* grid_name) {
  const auto* s = dynamic_cast<const T*>(&space);
  if (!s) bad_grid(std::string(grid_name) + " does not apply to " + space.describe());
  return *s;
}

// lo·(1-t) + hi·t keeps the midpoint of a symmetric interval exactly zero.
double lerp(double lo, double hi, std::size_t i, std::size_t n) {
  const double t = static_cast<double>(i) / static_cast<double>(n - 1);
  return lo * (1.0 - t) + hi * t;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return static_cast<std::size_t>(std::llround(r));
}

void check_lattice(const EuclideanSpace& e, const LatticeGrid& g) {
  if (g.lower.size() != e.dim() || g.upper.size() != e.dim()) bad_grid("lattice bounds do not match the dimension");
  if (g.count < 2) bad_grid("lattice needs at least 2 samples per axis");
  for (std::size_t i = 0; i < e.dim(); ++i) {
    if (!(g.lower[i] < g.upper[i])) bad_grid("lattice bounds must satisfy lower < upper");
  }
}

void check_radial(const PoincareBall& b, const RadialGrid& g) {
  if (b.dim() > 2) bad_grid("radial grids support dimensions 1 and 2");
  if (g.radial < 2 || (b.dim() == 2 && g.angular < 2)) bad_grid("radial grid needs at least 2 samples per axis");
  if (!(g.radius_cap > 0.0)) bad_grid("radial grid needs a positive radius cap");
}

}  // namespace

std::size_t grid_size(const Space& space, const GridSpec& grid) {
  return std::visit(
      Overloaded{
          [&](const LatticeGrid& g) {
            const auto& e = backend_as<EuclideanSpace>(space, "lattice grid");
            check_lattice(e, g);
            double n = 1.0;
            for (std::size_t i = 0; i < e.dim(); ++i) n *= static_cast<double>(g.count);
            return n > 1e18 ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(n);
          },
          [&](const SimplexGrid& g) {
            const auto& e = backend_as<EuclideanSpace>(space, "simplex grid");
            if (!std::holds_alternative<SimplexConstraint>(e.constraint())) bad_grid("simplex grid needs a simplex");
            if (g.denominator < 1) bad_grid("simplex grid needs denominator >= 1");
            return binomial(g.denominator + e.dim() - 1, e.dim() - 1);
          },
          [&](const RadialGrid& g) {
            const auto& b = backend_as<PoincareBall>(space, "radial grid");
            check_radial(b, g);
            return b.dim() == 1 ? g.radial : 1 + (g.radial - 1) * g.angular;
          },
          [&](const TreeGrid& g) {
            const auto& t = backend_as<MetricTree>(space, "tree grid");
            if (g.subdivisions < 1) bad_grid("tree grid needs at least 2 samples per edge");
            return t.vertex_count() + t.edges().size() * (g.subdivisions - 1);
          },
      },
      grid);
}

std::vector<Point> grid_points(const Space& space, const GridSpec& grid) {
  std::vector<Point> out;
  std::visit(
      Overloaded{
          [&](const LatticeGrid& g) {
            const auto& e = backend_as<EuclideanSpace>(space, "lattice grid");
            check_lattice(e, g);
            const std::size_t d = e.dim();
            std::vector<std::size_t> idx(d, 0);
            while (true) {
              Point p(std::vector<double>(d, 0.0));
              for (std::size_t i = 0; i < d; ++i) p[i] = lerp(g.lower[i], g.upper[i], idx[i], g.count);
              out.push_back(std::move(p));
              std::size_t k = d;
              while (k > 0) {
                --k;
                if (++idx[k] < g.count) break;
                idx[k] = 0;
                if (k == 0) return;
              }
              if (d == 0) return;
            }
          },
          [&](const SimplexGrid& g) {
            const auto& e = backend_as<EuclideanSpace>(space, "simplex grid");
            if (!std::holds_alternative<SimplexConstraint>(e.constraint())) bad_grid("simplex grid needs a simplex");
            const std::size_t d = e.dim();
            const std::size_t n = g.denominator;
            std::vector<std::size_t> parts(d, 0);
            // Lexicographic enumeration of compositions: the first d-1 parts
            // are free, the last one takes the remainder.
            std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
              if (i + 1 == d) {
                parts[i] = left;
                Point p(std::vector<double>(d, 0.0));
                for (std::size_t k = 0; k < d; ++k) p[k] = static_cast<double>(parts[k]) / static_cast<double>(n);
                out.push_back(std::move(p));
                return;
              }
              for (std::size_t v = left + 1; v-- > 0;) {
                parts[i] = v;
                rec(i + 1, left - v);
              }
            };
            rec(0, n);
          },
          [&](const RadialGrid& g) {
            const auto& b = backend_as<PoincareBall>(space, "radial grid");
            check_radial(b, g);
            if (b.dim() == 1) {
              for (std::size_t i = 0; i < g.radial; ++i) {
                out.push_back(Point{std::tanh(lerp(-g.radius_cap, g.radius_cap, i, g.radial) / 2.0)});
              }
              return;
            }
            out.push_back(Point{0.0, 0.0});
            for (std::size_t k = 1; k < g.radial; ++k) {
              const double r = std::tanh(g.radius_cap * static_cast<double>(k) / static_cast<double>(g.radial - 1) / 2.0);
              for (std::size_t j = 0; j < g.angular; ++j) {
                const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(g.angular);
                out.push_back(Point{r * std::cos(th), r * std::sin(th)});
              }
            }
          },
          [&](const TreeGrid& g) {
            const auto& t = backend_as<MetricTree>(space, "tree grid");
            if (g.subdivisions < 1) bad_grid("tree grid needs at least 2 samples per edge");
            std::set<std::pair<double, double>> seen;
            for (std::size_t e = 0; e < t.edges().size(); ++e) {
              for (std::size_t j = 0; j <= g.subdivisions; ++j) {
                const double s = t.edges()[e].length * static_cast<double>(j) / static_cast<double>(g.subdivisions);
                Point p = t.canonical(MetricTree::point(e, s));
                if (seen.insert({p[0], p[1]}).second) out.push_back(std::move(p));
              }
            }
          },
      },
      grid);
  for (const Point& p : out) {
    if (!space.is_valid(p)) bad_grid("grid sample outside " + space.describe());
  }
  return out;
}

double grid_step(const Space& space, const GridSpec& grid) {
  return std::visit(Overloaded{
                        [&](const LatticeGrid& g) {
                          double step = 0.0;
                          for (std::size_t i = 0; i < g.lower.size(); ++i) {
                            step = std::max(step, (g.upper[i] - g.lower[i]) / static_cast<double>(g.count - 1));
                          }
                          return step;
                        },
                        [&](const SimplexGrid& g) { return std::sqrt(2.0) / static_cast<double>(g.denominator); },
                        [&](const RadialGrid& g) {
                          const auto& b = backend_as<PoincareBall>(space, "radial grid");
                          if (b.dim() == 1) return 2.0 * g.radius_cap / static_cast<double>(g.radial - 1);
                          return std::max(g.radius_cap / static_cast<double>(g.radial - 1),
                                          2.0 * std::numbers::pi * std::sinh(g.radius_cap) /
                                              static_cast<double>(g.angular));
                        },
                        [&](const TreeGrid& g) {
                          const auto& t = backend_as<MetricTree>(space, "tree grid");
                          double longest = 0.0;
                          for (const auto& e : t.edges()) longest = std::max(longest, e.length);
                          return longest / static_cast<double>(g.subdivisions);
                        },
                    },
                    grid);
}

GridSpec with_resolution(const GridSpec& grid, std::size_t resolution) {
  if (resolution < 2) bad_grid("resolution must be at least 2");
  return std::visit(Overloaded{
                        [&](LatticeGrid g) -> GridSpec {
                          g.count = resolution;
                          return g;
                        },
                        [&](SimplexGrid g) -> GridSpec {
                          g.denominator = resolution - 1;
                          return g;
                        },
                        [&](RadialGrid g) -> GridSpec {
                          g.radial = resolution;
                          g.angular = resolution;
                          return g;
                        },
                        [&](TreeGrid g) -> GridSpec {
                          g.subdivisions = resolution - 1;
                          return g;
                        },
                    },
                    grid);
}

}  // namespace gm
