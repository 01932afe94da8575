#include <cmath>
#include <vector>

#include "doctest.h"
#include "gm/geometry.hpp"
#include "test_support.hpp"

using namespace gm;
using namespace gm::testing;

TEST_CASE("distance examples") {
  auto e2 = euclid(2);
  CHECK(e2->distance({0.3, -1.0}, {0.3, -1.0}) == 0.0);
  CHECK(e2->distance({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-15));

  auto h2 = poincare(2);
  const double d = h2->distance({0.0, 0.0}, {0.5, 0.0});
  CHECK(d == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(d == doctest::Approx(2.0 * std::atanh(0.5)).epsilon(1e-14));
  CHECK(d == doctest::Approx(1.0986123).epsilon(1e-7));
}

TEST_CASE("distance rejects invalid points") {
  auto e2 = euclid(2);
  CHECK_THROWS_AS(e2->distance({0.0}, {1.0, 2.0}), Error);
  auto h2 = poincare(2);
  try {
    h2->distance({0.0, 0.0}, {1.0, 0.0});
    FAIL("expected throw");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::point_on_boundary);
  }
}

TEST_CASE("geodesic_point examples") {
  auto e2 = euclid(2);
  CHECK(e2->geodesic({1.0, 2.0}, {5.0, -1.0}, 0.0) == Point{1.0, 2.0});
  const Point m = e2->geodesic({0.0, 0.0}, {2.0, 0.0}, 0.25);
  CHECK(m[0] == doctest::Approx(0.5));
  CHECK(m[1] == doctest::Approx(0.0));
  CHECK_THROWS_AS(e2->geodesic({0.0, 0.0}, {2.0, 0.0}, 1.5), Error);

  // Path leaf1 -> centre -> leaf2 has length 4; halfway is the branch vertex.
  auto tree = star_tree();
  const Point p = tree->vertex_point(1);
  const Point q = tree->vertex_point(2);
  CHECK(tree->distance(p, q) == doctest::Approx(4.0));
  const Point mid = tree->geodesic(p, q, 0.5);
  CHECK(mid == tree->vertex_point(0));
  CHECK(tree->distance(p, mid) == doctest::Approx(2.0));
}

TEST_CASE("comparison_triangle") {
  SUBCASE("all zero") {
    const auto t = comparison_triangle(0, 0, 0);
    CHECK(t.x == Vec2{0, 0});
    CHECK(t.y == Vec2{0, 0});
    CHECK(t.z == Vec2{0, 0});
  }
  SUBCASE("3-4-5") {
    const auto t = comparison_triangle(3, 4, 5);
    CHECK(t.x == Vec2{0, 0});
    CHECK(t.y == Vec2{5, 0});
    CHECK(t.z[0] == doctest::Approx(3.2).epsilon(1e-15));
    CHECK(t.z[1] == doctest::Approx(2.4).epsilon(1e-15));
    CHECK(planar_distance(t.z, t.x) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(planar_distance(t.z, t.y) == doctest::Approx(3.0).epsilon(1e-15));
  }
  SUBCASE("collinear") {
    const auto t = comparison_triangle(1.5, 2.5, 4.0);
    CHECK(t.z[1] == 0.0);
    CHECK(t.z[0] == doctest::Approx(2.5));
  }
  SUBCASE("longest side not c is relabelled") {
    const auto t = comparison_triangle(5, 3, 4);  // d(y,z) longest
    CHECK(planar_distance(t.y, t.z) == doctest::Approx(5.0));
    CHECK(planar_distance(t.z, t.x) == doctest::Approx(3.0));
    CHECK(planar_distance(t.x, t.y) == doctest::Approx(4.0));
  }
  SUBCASE("violation") { CHECK_THROWS_AS(comparison_triangle(1, 1, 3), Error); }
  SUBCASE("random triangles reproduce sides") {
    Sampler s(7);
    for (int i = 0; i < 2000; ++i) {
      const double a = s.uniform(0, 10), b = s.uniform(0, 10);
      const double c = s.uniform(std::abs(a - b), a + b);
      const auto t = comparison_triangle(a, b, c);
      const double scale = std::max({a, b, c});
      CHECK(std::abs(planar_distance(t.y, t.z) - a) <= 1e-12 * scale);
      CHECK(std::abs(planar_distance(t.z, t.x) - b) <= 1e-12 * scale);
      CHECK(std::abs(planar_distance(t.x, t.y) - c) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("check_cn_inequality") {
  auto e2 = euclid(2);
  Sampler s(11);
  for (int i = 0; i < 200; ++i) {
    const Point x = s.point(*e2, 5), y = s.point(*e2, 5), z = s.point(*e2, 5);
    // Hilbert space: equality (parallelogram law).
    CHECK(std::abs(check_cn_inequality(*e2, x, y, z, 0.5)) <= 1e-9);
    CHECK(std::abs(check_cn_inequality(*e2, x, y, z, 0.0)) <= 1e-12);
  }
  auto h2 = poincare(2);
  double worst = -1e300;
  for (int i = 0; i < 1000; ++i) {
    const Point x = s.point(*h2, 4), y = s.point(*h2, 4), z = s.point(*h2, 4);
    for (int k = 1; k <= 9; ++k) worst = std::max(worst, check_cn_inequality(*h2, x, y, z, 0.1 * k));
  }
  CHECK(worst <= 1e-7);
  // Strictly curved: the inequality is not an identity.
  CHECK(worst < 0.0);
}

TEST_CASE("check_quadrilateral_cs") {
  auto e2 = euclid(2);
  CHECK(check_quadrilateral_cs(*e2, Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}) == doctest::Approx(-2.0));
  Sampler s(3);
  const Point a = s.point(*e2, 2), c = s.point(*e2, 2), d = s.point(*e2, 2);
  CHECK(std::abs(check_quadrilateral_cs(*e2, a, a, c, d)) <= 1e-12);

  auto tree = sample_tree();
  double worst = -1e300;
  for (int i = 0; i < 1000; ++i) {
    worst = std::max(worst, check_quadrilateral_cs(*tree, s.point(*tree, 1), s.point(*tree, 1), s.point(*tree, 1),
                                                   s.point(*tree, 1)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("project_to_segment") {
  auto e2 = euclid(2);
  const Point a{0, 0}, b{2, 0};
  const Point on = project_to_segment(*e2, a, b, Point{0.7, 0.0});
  CHECK(e2->distance(on, Point{0.7, 0.0}) <= 1e-9);
  const Point drop = project_to_segment(*e2, a, b, Point{1, 1});
  CHECK(e2->distance(drop, Point{1, 0}) <= 1e-9);
  const Point clamp = project_to_segment(*e2, a, b, Point{5, 3});
  CHECK(e2->distance(clamp, Point{2, 0}) <= 1e-12);

  SUBCASE("firm nonspreadingness on every backend") {
    Sampler s(5);
    auto check_backend = [&](const Space& sp, double scale) {
      double worst_firm = -1e300, worst_probe = -1e300;
      for (int i = 0; i < 300; ++i) {
        const Point p = s.point(sp, scale), q = s.point(sp, scale);
        const Point x = s.point(sp, scale), y = s.point(sp, scale);
        const Point px = project_to_segment(sp, p, q, x);
        const Point py = project_to_segment(sp, p, q, y);
        worst_firm = std::max(worst_firm, firm_nonspreading_residual(sp, x, y, px, py));
        const Point z = sp.geodesic(p, q, s.uniform());
        const double dz = sp.distance(z, px), dx = sp.distance(px, x), dzx = sp.distance(z, x);
        worst_probe = std::max(worst_probe, dz * dz + dx * dx - dzx * dzx);
      }
      CHECK(worst_firm <= 1e-7);
      CHECK(worst_probe <= 1e-7);
    };
    check_backend(*euclid(3), 3);
    check_backend(*poincare(2), 3);
    check_backend(*sample_tree(), 1);
  }
}

TEST_CASE("asymptotic_center_estimate") {
  auto e2 = euclid(2);
  SUBCASE("constant sequence") {
    std::vector<Point> pts(6, Point{0.4, -0.2});
    const auto ac = asymptotic_center_estimate<Space>(*e2, pts);
    CHECK(ac.center == Point{0.4, -0.2});
    CHECK(ac.radius == 0.0);
  }
  SUBCASE("alternating pair in the plane") {
    std::vector<Point> pts;
    for (int i = 0; i < 10; ++i) pts.push_back(i % 2 ? Point{2, 0} : Point{0, 0});
    const auto ac = asymptotic_center_estimate<Space>(*e2, pts);
    CHECK(e2->distance(ac.center, Point{1, 0}) <= 1e-6);
    CHECK(ac.radius == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("alternating leaves of a tree") {
    auto tree = star_tree();
    std::vector<Point> pts;
    for (int i = 0; i < 10; ++i) pts.push_back(tree->vertex_point(i % 2 ? 1 : 2));
    const auto ac = asymptotic_center_estimate<Space>(*tree, pts);
    CHECK(tree->distance(ac.center, tree->vertex_point(0)) <= 1e-9);
    CHECK(ac.radius == doctest::Approx(2.0));
  }
  SUBCASE("triangle of points needs the extra lines") {
    std::vector<Point> pts{{0, 0}, {4, 0}, {2, 3}, {0, 0}, {4, 0}, {2, 3}};
    AsymptoticCenterOptions opts;
    opts.tail_start = 0;
    const auto ac = asymptotic_center_estimate<Space>(*e2, pts, opts);
    // Circumcentre of the acute triangle: (2, 5/6), radius 13/6.
    CHECK(ac.radius == doctest::Approx(13.0 / 6.0).epsilon(1e-6));
  }
  SUBCASE("errors and unbounded tails") {
    std::vector<Point> none;
    CHECK_THROWS_AS(asymptotic_center_estimate<Space>(*e2, none), Error);
    std::vector<Point> far{{0, 0}, {1e7, 0}, {0, 0}, {1e7, 0}};
    AsymptoticCenterOptions opts;
    opts.diameter_cap = 1e3;
    CHECK(asymptotic_center_estimate<Space>(*e2, far, opts).status == CenterStatus::unbounded_tail);
  }
}

TEST_CASE("delta_convergence_probe") {
  auto e2 = euclid(2);
  const Point c{0.5, -0.5};
  std::vector<Point> witnesses{{1.5, -0.5}, {0.5, 0.5}, {-1, -2}, c};

  SUBCASE("strongly convergent spiral") {
    std::vector<Point> xs;
    for (int n = 1; n <= 400; ++n) xs.push_back({c[0] + std::cos(n) / n, c[1] + std::sin(n) / n});
    DeltaProbeOptions opts;
    opts.tol = 1e-2;
    const auto rep = delta_convergence_probe<Space>(*e2, xs, c, witnesses, opts);
    CHECK(rep.consistent);
    CHECK(rep.witnesses[3].skipped);
  }
  SUBCASE("alternating sequence is not") {
    const Point q{1.5, -0.5};
    std::vector<Point> xs;
    for (int n = 0; n < 40; ++n) xs.push_back(n % 2 ? q : c);
    const auto rep = delta_convergence_probe<Space>(*e2, xs, c, witnesses);
    CHECK_FALSE(rep.consistent);
    CHECK(rep.witnesses[0].tail_max == doctest::Approx(1.0));
  }
}

TEST_CASE("metric axioms and geodesic law on every backend") {
  Sampler s(2024);
  auto run = [&](const Space& sp, double scale) {
    for (int i = 0; i < 1000; ++i) {
      const Point p = s.point(sp, scale), q = s.point(sp, scale), r = s.point(sp, scale);
      CHECK(std::abs(sp.distance(p, q) - sp.distance(q, p)) <= 1e-12);
      CHECK(sp.distance(p, r) <= sp.distance(p, q) + sp.distance(q, r) + 1e-9);
      CHECK(sp.distance(p, p) == 0.0);
      const double a = s.uniform(), b = s.uniform();
      const double d = sp.distance(p, q);
      CHECK(std::abs(sp.distance(sp.geodesic(p, q, a), sp.geodesic(p, q, b)) - std::abs(a - b) * d) <= 1e-9);
      CHECK(check_quadrilateral_cs(sp, p, q, r, s.point(sp, scale)) <= 1e-7);
    }
  };
  run(*euclid(3), 5);
  run(*poincare(2), 3);
  run(*poincare(3), 3);
  run(*sample_tree(), 1);
}

TEST_CASE("product space sandwich and componentwise geodesic") {
  ProductSpace prod(poincare(2), sample_tree());
  Sampler s(9);
  for (int i = 0; i < 500; ++i) {
    const ProductPoint z = s.product_point(prod, 3, 1), w = s.product_point(prod, 3, 1);
    const double d2 = prod.distance(z, w, ProductMetric::ell2);
    const double dinf = prod.distance(z, w, ProductMetric::ell_inf);
    CHECK(dinf <= d2);
    CHECK(d2 <= std::sqrt(2.0) * dinf * (1 + 1e-15));
    const double dx = prod.left().distance(z.x, w.x), dy = prod.right().distance(z.y, w.y);
    CHECK(d2 == doctest::Approx(std::sqrt(dx * dx + dy * dy)).epsilon(1e-14));
    CHECK(check_cn_inequality(prod, z, w, s.product_point(prod, 3, 1), s.uniform()) <= 1e-7);
  }
}
