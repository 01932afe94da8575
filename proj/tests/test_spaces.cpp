#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gm/geometry.hpp"
#include "test_support.hpp"

using namespace gm;
using namespace gm::testing;

TEST_CASE("poincare_geodesic") {
  auto h2 = poincare(2);
  const Point p{0.1, -0.4}, q{-0.6, 0.2};
  CHECK(h2->geodesic(p, q, 1.0) == q);

  // Radial geodesic from the origin: r(t) = tanh(t d / 2) with d = ln 3.
  const Point half = h2->geodesic({0.0, 0.0}, {0.5, 0.0}, 0.5);
  CHECK(half[0] == doctest::Approx(std::tanh(std::log(3.0) / 4.0)).epsilon(1e-14));
  CHECK(half[0] == doctest::Approx(0.26794919).epsilon(1e-8));
  CHECK(half[1] == doctest::Approx(0.0));

  const Point origin = h2->geodesic({-0.3, 0.0}, {0.3, 0.0}, 0.5);
  CHECK(std::abs(origin[0]) <= 1e-15);
  CHECK(std::abs(origin[1]) <= 1e-15);

  CHECK_THROWS_AS(h2->geodesic({0.0, 0.0}, {1.0, 0.0}, 0.5), Error);
}

TEST_CASE("poincare closed forms agree") {
  auto h3 = poincare(3);
  Sampler s(1);
  const Point origin{0, 0, 0};
  for (int i = 0; i < 1000; ++i) {
    const Point p = s.point(*h3, 6);
    CHECK(std::abs(h3->distance(origin, p) - PoincareBall::distance_from_origin(p)) <= 1e-10);
  }
}

TEST_CASE("tree_geodesic") {
  SUBCASE("p == q") {
    auto t = star_tree();
    const Point p = MetricTree::point(1, 0.3);
    CHECK(t->geodesic(p, p, 0.7) == p);
  }
  SUBCASE("symmetric points on a unit star meet at the centre") {
    // Leaf edges stored centre-first, so offset 0.5 is halfway either way.
    MetricTree t(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
    const Point p = MetricTree::point(0, 0.5), q = MetricTree::point(1, 0.5);
    CHECK(t.distance(p, q) == doctest::Approx(1.0));
    CHECK(t.geodesic(p, q, 0.5) == t.vertex_point(0));
  }
  SUBCASE("path a-b-c") {
    MetricTree t(3, {{0, 1, 1.0}, {1, 2, 2.0}});
    const Point a = t.vertex_point(0), c = t.vertex_point(2);
    const Point m = t.geodesic(a, c, 0.75);
    CHECK(m[0] == 1.0);
    CHECK(m[1] == doctest::Approx(1.25));
  }
  SUBCASE("errors") {
    auto t = star_tree();
    try {
      t->distance(MetricTree::point(7, 0.1), MetricTree::point(0, 0.1));
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::invalid_edge_id);
    }
    try {
      t->distance(MetricTree::point(2, 1.5), MetricTree::point(0, 0.1));
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::offset_out_of_range);
    }
    CHECK_THROWS_AS(MetricTree(3, {{0, 1, 1.0}}), Error);
    CHECK_THROWS_AS(MetricTree(4, {{0, 1, 1.0}, {1, 0, 1.0}, {2, 3, 1.0}}), Error);
    CHECK_THROWS_AS(MetricTree(2, {{0, 1, -1.0}}), Error);
  }
  SUBCASE("vertex points are canonical") {
    auto t = sample_tree();
    // Vertex 0 sits on edges 0, 1, 2; edge 0 wins.
    CHECK(t->canonical(MetricTree::point(2, 0.0)) == MetricTree::point(0, 0.0));
    CHECK(t->canonical(MetricTree::point(2, 0.8)) == t->vertex_point(3));
    CHECK(t->vertex_point(3) == MetricTree::point(2, 0.8));
  }
}

TEST_CASE("tree medians: the three geodesics of a triple share one point") {
  auto t = sample_tree();
  Sampler s(77);
  for (int i = 0; i < 1000; ++i) {
    const Point p = s.point(*t, 1), q = s.point(*t, 1), r = s.point(*t, 1);
    const double dpq = t->distance(p, q), dpr = t->distance(p, r), dqr = t->distance(q, r);
    if (dpq == 0.0) continue;
    const double gromov = 0.5 * (dpq + dpr - dqr);
    const Point m = t->geodesic(p, q, std::clamp(gromov / dpq, 0.0, 1.0));
    CHECK(std::abs(t->distance(p, m) + t->distance(m, r) - dpr) <= 1e-9);
    CHECK(std::abs(t->distance(q, m) + t->distance(m, r) - dqr) <= 1e-9);
  }
}

TEST_CASE("constrained_euclidean_membership") {
  EuclideanSpace free2(2);
  CHECK(constrained_euclidean_membership(free2, {1e9, -3}));
  EuclideanSpace ball(2, BallConstraint{1.0});
  CHECK(constrained_euclidean_membership(ball, {0.6, 0.8}));
  CHECK_FALSE(constrained_euclidean_membership(ball, {0.6, 0.81}));
  EuclideanSpace simplex(3, SimplexConstraint{});
  CHECK_FALSE(constrained_euclidean_membership(simplex, {0.5, 0.5, 0.1}));
  CHECK(constrained_euclidean_membership(simplex, {0.2, 0.3, 0.5}));
  CHECK_THROWS_AS(constrained_euclidean_membership(simplex, {0.5, 0.5}), Error);
  EuclideanSpace box(2, BoxConstraint{{-1, -1}, {1, 2}});
  CHECK(box.contains({1, 2}));
  CHECK_FALSE(box.contains({1, 2.1}));
  CHECK(simplex.project({2.0, 0.0, 0.0}) == Point{1.0, 0.0, 0.0});
}

TEST_CASE("constrained geodesics stay feasible") {
  Sampler s(4);
  std::vector<std::shared_ptr<const EuclideanSpace>> spaces{
      std::make_shared<EuclideanSpace>(3, BallConstraint{2.0}),
      std::make_shared<EuclideanSpace>(2, BoxConstraint{{-1, 0}, {1, 3}}),
      std::make_shared<EuclideanSpace>(4, SimplexConstraint{})};
  for (const auto& sp : spaces) {
    for (int i = 0; i < 200; ++i) {
      const Point p = s.point(*sp, 2), q = s.point(*sp, 2);
      REQUIRE(sp->contains(p));
      for (int k = 1; k <= 10; ++k) CHECK(sp->contains(sp->geodesic(p, q, k / 11.0)));
    }
  }
}

TEST_CASE("generic minimizer on each backend") {
  Sampler s(8);
  SUBCASE("euclidean strongly convex quadratic") {
    auto e3 = euclid(3);
    const Point target{0.3, -1.2, 2.0};
    auto f = [&](const Point& p) {
      const double d = e3->distance(p, target);
      return d * d + 0.5 * (p[0] - p[1]) * (p[0] - p[1]);
    };
    // Stationarity gives p0 - p1 = (t0 - t1) / 2, so p = (-0.075, -0.825, 2).
    const auto res = minimize_geodesic(*e3, f, Point{0, 0, 0});
    CHECK(res.converged);
    CHECK(e3->distance(res.point, Point{-0.075, -0.825, 2.0}) <= 1e-9);
  }
  SUBCASE("poincare squared distance to two points") {
    auto h2 = poincare(2);
    const Point a{0.2, 0.5}, b{-0.6, 0.1};
    auto f = [&](const Point& p) {
      const double da = h2->distance(p, a), db = h2->distance(p, b);
      return 2.0 * da * da + db * db;
    };
    // Weighted two-point mean lies on the geodesic at fraction 1/3 from a.
    const Point expected = h2->geodesic(a, b, 1.0 / 3.0);
    const auto res = minimize_geodesic(*h2, f, Point{0, 0});
    CHECK(h2->distance(res.point, expected) <= 1e-8);
  }
  SUBCASE("tree exhaustive block") {
    auto t = sample_tree();
    const Point a = MetricTree::point(3, 1.0), b = MetricTree::point(1, 1.2);
    auto f = [&](const Point& p) {
      const double da = t->distance(p, a), db = t->distance(p, b);
      return da * da + 3.0 * db * db;
    };
    const Point expected = t->geodesic(a, b, 0.75);
    const auto res = minimize_geodesic(*t, f, t->vertex_point(1));
    CHECK(t->distance(res.point, expected) <= 1e-9);
  }
  SUBCASE("simplex pairwise lines") {
    auto simplex = std::make_shared<EuclideanSpace>(3, SimplexConstraint{});
    const Point target{0.7, 0.6, -0.5};
    // target lies outside the simplex, so the distance is computed by hand.
    auto f = [&](const Point& p) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < 3; ++i) d2 += (p[i] - target[i]) * (p[i] - target[i]);
      return d2;
    };
    const auto res = minimize_geodesic(*simplex, f, Point{1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(simplex->distance(res.point, simplex->project(target)) <= 1e-9);
  }
}
