#include <cmath>
#include <cstring>
#include <set>

#include "doctest.h"
#include "gm/minimax.hpp"
#include "test_support.hpp"

using namespace gm;
using namespace gm::testing;

namespace {

SaddleProblem coupled_box() {
  auto box = std::make_shared<EuclideanSpace>(1, BoxConstraint{{-1.0}, {1.0}});
  return {.name = "coupled",
          .space = ProductSpace(box, box),
          .f = [](const Point& x, const Point& y) { return -x[0] * x[0] + y[0] * y[0] + x[0] * y[0]; },
          .grid_x = LatticeGrid{{-1.0}, {1.0}, 201},
          .grid_y = LatticeGrid{{-1.0}, {1.0}, 201}};
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("lattice grids") {
  auto r1 = euclid(1);
  const auto pts = grid_points(*r1, LatticeGrid{{-1.0}, {1.0}, 11});
  REQUIRE(pts.size() == 11);
  CHECK(pts[0][0] == -1.0);
  CHECK(pts[5][0] == 0.0);
  CHECK(pts[10][0] == 1.0);
  CHECK(grid_step(*r1, LatticeGrid{{-1.0}, {1.0}, 11}) == doctest::Approx(0.2));

  auto r2 = euclid(2);
  const auto p2 = grid_points(*r2, LatticeGrid{{0.0, -1.0}, {1.0, 1.0}, 3});
  REQUIRE(p2.size() == 9);
  CHECK(p2[1] == Point{0.0, 0.0});
  CHECK(p2[3] == Point{0.5, -1.0});
  CHECK(grid_size(*r2, LatticeGrid{{0.0, -1.0}, {1.0, 1.0}, 3}) == 9);
}

TEST_CASE("simplex, radial and tree grids") {
  auto s3 = std::make_shared<EuclideanSpace>(3, SimplexConstraint{});
  const auto pts = grid_points(*s3, SimplexGrid{4});
  CHECK(pts.size() == 15);  // C(6, 2)
  CHECK(grid_size(*s3, SimplexGrid{4}) == 15);
  CHECK(pts.front() == Point{1.0, 0.0, 0.0});
  CHECK(pts.back() == Point{0.0, 0.0, 1.0});
  for (const auto& p : pts) CHECK(std::abs(p[0] + p[1] + p[2] - 1.0) <= 1e-15);

  auto h1 = poincare(1);
  const auto line = grid_points(*h1, RadialGrid{2.0, 5, 1});
  REQUIRE(line.size() == 5);
  CHECK(line[2][0] == 0.0);
  CHECK(h1->distance(line[0], line[4]) == doctest::Approx(4.0).epsilon(1e-12));

  auto h2 = poincare(2);
  const auto disk = grid_points(*h2, RadialGrid{});
  CHECK(disk.size() == 1 + 8 * 16);
  CHECK(grid_size(*h2, RadialGrid{}) == disk.size());
  CHECK(PoincareBall::distance_from_origin(disk.back()) == doctest::Approx(2.0).epsilon(1e-12));

  auto t = sample_tree();
  const auto tp = grid_points(*t, TreeGrid{8});
  CHECK(tp.size() == 5 + 4 * 7);
  CHECK(grid_size(*t, TreeGrid{8}) == tp.size());
  std::set<std::vector<double>> distinct;
  for (const auto& p : tp) distinct.insert(p.coords);
  CHECK(distinct.size() == tp.size());
  CHECK(grid_step(*t, TreeGrid{8}) == doctest::Approx(1.5 / 8));
}

TEST_CASE("invalid grids") {
  auto expect_invalid = [](auto fn) {
    try {
      fn();
      FAIL("expected invalid-grid");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::invalid_grid);
    }
  };
  expect_invalid([] { grid_points(*euclid(1), LatticeGrid{{-1.0}, {1.0}, 1}); });
  expect_invalid([] { grid_points(*euclid(2), LatticeGrid{{-1.0}, {1.0}, 5}); });
  expect_invalid([] { grid_points(*poincare(3), RadialGrid{}); });
  expect_invalid([] { grid_points(*sample_tree(), LatticeGrid{{-1.0}, {1.0}, 5}); });
  expect_invalid([] { grid_points(*euclid(2), SimplexGrid{4}); });
  // A lattice wider than its box constraint.
  auto box = std::make_shared<EuclideanSpace>(1, BoxConstraint{{0.0}, {1.0}});
  expect_invalid([&] { grid_points(*box, LatticeGrid{{-1.0}, {1.0}, 5}); });
}

TEST_CASE("grid_minimax examples") {
  const auto zero = grid_minimax(find_problem("zero"));
  CHECK(zero.maxmin == 0.0);
  CHECK(zero.minmax == 0.0);
  CHECK(zero.gap == 0.0);
  // Ties resolve to the first grid point.
  CHECK(zero.maxmin_x == Point{-1.0});

  const auto c = grid_minimax(coupled_box(), coupled_box().grid_x, coupled_box().grid_y);
  const double h = 0.01;
  CHECK(std::abs(c.maxmin) <= 2 * h * h);
  CHECK(std::abs(c.minmax) <= 2 * h * h);
  CHECK(c.gap <= 2 * h * h);
  CHECK(std::abs(c.maxmin_x[0]) <= h);
  CHECK(std::abs(c.minmax_y[0]) <= h);

  const auto g = grid_minimax(find_problem("matrix_game"));
  CHECK(g.size_x == 101);
  CHECK(g.maxmin == 0.0);
  CHECK(g.minmax == 0.0);
  CHECK(g.maxmin_x == Point{1.0, 0.0});

  const auto mp = grid_minimax(find_problem("matching_pennies"));
  CHECK(mp.maxmin == 0.0);
  CHECK(mp.minmax == 0.0);
  CHECK(mp.maxmin_x == Point{0.5, 0.5});
  CHECK(mp.minmax_y == Point{0.5, 0.5});
}

TEST_CASE("weak duality and determinism on every entry") {
  for (const auto& e : library()) {
    const SaddleProblem& p = e.problem;
    CAPTURE(p.name);
    const auto a = grid_minimax(p);
    const auto b = grid_minimax(p);
    CHECK(a.maxmin <= a.minmax + 1e-12);
    CHECK(same_bits(a.maxmin, b.maxmin));
    CHECK(same_bits(a.minmax, b.minmax));
    CHECK(a.maxmin_x == b.maxmin_x);
    CHECK(a.minmax_y == b.minmax_y);
    CHECK(a.boxed == p.boxed);
  }
}

TEST_CASE("maxmin is monotone under nested refinement of grid_x") {
  for (const char* name : {"bilinear_box", "quadratic", "sion_control", "sion_quasi"}) {
    const auto& p = find_problem(name);
    const GridSpec gy = with_resolution(p.grid_y, 11);
    double prev = -1e300;
    for (std::size_t r : {2, 3, 5, 9, 17, 33}) {
      const auto rep = grid_minimax(p, with_resolution(p.grid_x, r), gy);
      CHECK(rep.maxmin >= prev);
      prev = rep.maxmin;
    }
  }
}

TEST_CASE("grid cap") {
  const auto& bil = find_problem("bilinear");
  try {
    grid_minimax(bil, LatticeGrid{{-1.0}, {1.0}, 100000}, LatticeGrid{{-1.0}, {1.0}, 100000});
    FAIL("expected grid-too-large");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::grid_too_large);
  }
  CHECK_THROWS_AS(grid_minimax(bil, 120), Error);
  CHECK_NOTHROW(grid_minimax(bil, 121));
}

TEST_CASE("sion gap study") {
  for (const char* name : {"bilinear_box", "quadratic", "sion_quasi"}) {
    CAPTURE(name);
    const auto st = sion_gap_study(find_problem(name), {11, 51, 201});
    CHECK(st.shrinking);
    CHECK(st.within_bound);
    CHECK(st.samples.back().gap <= st.samples.front().gap);
  }
  const auto ctl = sion_gap_study(find_problem("sion_control"), {11, 51, 201});
  for (const auto& s : ctl.samples) {
    CHECK(s.gap == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.maxmin <= s.minmax + 1e-12);
  }
  // sqrt has unbounded slope at 0, but at grid-step separations the sampled
  // slope is about 1/sqrt(step).
  const auto q = sion_gap_study(find_problem("sion_quasi"), {51});
  CHECK(q.samples[0].lipschitz > 1.0);
}

TEST_CASE("oracle_vs_solver") {
  const auto& box = find_problem("bilinear_box");
  const auto rep = grid_minimax(box, with_resolution(box.grid_x, 201), with_resolution(box.grid_y, 201));
  const auto tr = run_ppa(box, {{0.9}, {-0.4}}, Schedule::constant(1.0));
  const auto cmp = oracle_vs_solver(box, rep, tr);
  CHECK(cmp.verdict == Verdict::bounded);
  CHECK(cmp.distance <= std::hypot(rep.step_x, rep.step_y) + 1e-6);

  const auto& q = find_problem("quadratic");
  const auto qr = grid_minimax(q, with_resolution(q.grid_x, 201), with_resolution(q.grid_y, 201));
  const auto qt = run_ppa(q, {{-2.0}, {2.0}}, Schedule::constant(1.0));
  CHECK(oracle_vs_solver(q, qr, qt).distance <= std::hypot(qr.step_x, qr.step_y) + 1e-6);

  const auto& zero = find_problem("zero");
  const auto zt = run_ppa(zero, {{0.4}, {0.1}}, Schedule::constant(1.0));
  CHECK(oracle_vs_solver(zero, grid_minimax(zero), zt).value_difference == 0.0);
}
