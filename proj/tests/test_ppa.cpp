#include <cmath>
#include <complex>

#include "doctest.h"
#include "gm/ppa.hpp"
#include "test_support.hpp"

using namespace gm;

TEST_CASE("schedules") {
  const auto c = Schedule::constant(2.0);
  CHECK(c.at(1) == 2.0);
  CHECK(c.at(1000) == 2.0);
  CHECK(c.sum_diverges());
  CHECK(c.sumsq_diverges());

  const auto half = Schedule::power(1.0, 0.5);
  CHECK(half.at(4) == 0.5);
  CHECK(half.sum_diverges());
  CHECK(half.sumsq_diverges());
  const auto p = Schedule::power(3.0, 0.75);
  CHECK(p.at(16) == doctest::Approx(3.0 / 8.0).epsilon(1e-15));
  CHECK(p.sum_diverges());
  CHECK_FALSE(p.sumsq_diverges());
  CHECK_FALSE(Schedule::power(1.0, 2.0).sum_diverges());

  const auto l = Schedule::list({1.0, 0.5});
  CHECK(l.at(2) == 0.5);
  CHECK(l.length() == 2u);
  CHECK_FALSE(l.sum_diverges());
  CHECK_THROWS_AS(l.at(3), Error);

  for (auto make : {+[] { Schedule::constant(0.0); }, +[] { Schedule::constant(-1.0); },
                    +[] { Schedule::power(0.0, 0.5); }, +[] { Schedule::list({1.0, -2.0}); },
                    +[] { Schedule::list({}); }}) {
    try {
      make();
      FAIL("expected invalid-lambda");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::invalid_lambda);
    }
  }
}

TEST_CASE("run_ppa zero problem") {
  const auto& zero = find_problem("zero");
  const ProductPoint z1{{0.3}, {-1.2}};
  const auto tr = run_ppa(zero, z1, Schedule::constant(1.0));
  CHECK(tr.stop == StopReason::step_tol);
  REQUIRE(tr.iterates.size() == 2);
  CHECK(tr.iterates[1] == z1);
  CHECK(tr.steps[0] == 0.0);
  CHECK(tr.residuals[0] == 0.0);
}

TEST_CASE("run_ppa bilinear against complex recursion") {
  // R(x + iy) = (1 - i lambda)(x + iy) / (1 + lambda^2).
  const auto& bil = find_problem("bilinear");
  const auto tr = run_ppa(bil, {{1.0}, {0.0}}, Schedule::constant(1.0), {}, {}, ProductPoint{{0.0}, {0.0}});
  CHECK(tr.stop == StopReason::step_tol);
  CHECK(tr.step_count() <= 60);
  CHECK(tr.steps.back() < 1e-7);
  std::complex<double> w(1.0, 0.0);
  for (std::size_t n = 0; n < tr.iterates.size(); ++n) {
    CHECK(std::abs(tr.iterates[n].x[0] - w.real()) <= 1e-12);
    CHECK(std::abs(tr.iterates[n].y[0] - w.imag()) <= 1e-12);
    CHECK(std::abs(tr.dist_to_reference[n] - std::pow(2.0, -0.5 * static_cast<double>(n))) <= 1e-9);
    w *= std::complex<double>(1.0, -1.0) / 2.0;
  }

  const auto pic = picard_iterate(bil, {{1.0}, {0.0}}, 1.0, tr.step_count());
  CHECK(pic.iterates == tr.iterates);

  const auto fe = fejer_check(bil.space, tr, {{0.0}, {0.0}});
  CHECK(fe.passed);
  for (std::size_t n = 1; n < fe.distances.size(); ++n) {
    CHECK(fe.distances[n] == doctest::Approx(fe.distances[n - 1] / std::sqrt(2.0)).epsilon(1e-12));
  }

  const auto long_run = run_ppa(bil, {{1.0}, {0.0}}, Schedule::constant(1.0), {.max_iter = 50, .step_tol = 0.0});
  CHECK(long_run.step_count() == 50);
  const auto rs = residual_series(long_run);
  CHECK(rs.monotone);
  CHECK(rs.vanishing);
  CHECK(rs.tail < 1e-6);

  CHECK(boundedness_verdict(bil.space, tr, 100.0).verdict == Verdict::bounded);
  CHECK(boundedness_verdict(bil.space, long_run, 100.0).verdict == Verdict::bounded);
}

TEST_CASE("saddle-free entry escapes") {
  const auto& sf = find_problem("saddle_free");
  const auto tr = run_ppa(sf, {{0.0}, {0.0}}, Schedule::constant(1.0), {.max_iter = 200});
  CHECK(tr.step_count() == 200);
  for (std::size_t n = 0; n < tr.iterates.size(); ++n) {
    CHECK(tr.iterates[n].x[0] == static_cast<double>(n));
    CHECK(tr.iterates[n].y[0] == static_cast<double>(n));
    CHECK(std::abs(sf.space.distance(tr.iterates[n], tr.iterates[0]) - n * std::sqrt(2.0)) <= 1e-9);
  }
  const auto v = boundedness_verdict(sf.space, tr, 100.0);
  CHECK(v.verdict == Verdict::escaped);
  // (n - 1) sqrt 2 first exceeds 100 at n = 72.
  CHECK(v.first_escape == 72u);

  const auto rs = residual_series(tr);
  CHECK(rs.monotone);
  CHECK_FALSE(rs.vanishing);
  CHECK(rs.tail == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const auto pic = picard_iterate(sf, {{0.0}, {0.0}}, 1.0, 150);
  CHECK(boundedness_verdict(sf.space, pic, 100.0).verdict == Verdict::escaped);

  const auto power = run_ppa(sf, {{0.0}, {0.0}}, Schedule::power(1.0, 0.5), {.max_iter = 20000});
  CHECK(boundedness_verdict(sf.space, power, 100.0).verdict == Verdict::escaped);
}

TEST_CASE("boundedness on short traces") {
  const auto& bil = find_problem("bilinear");
  const auto tr = picard_iterate(bil, {{1.0}, {0.0}}, 1.0, 2);
  CHECK(tr.iterates.size() == 3);
  CHECK(boundedness_verdict(bil.space, tr, 100.0).verdict == Verdict::inconclusive);
}

TEST_CASE("inner failure truncates the trace") {
  const auto& box = find_problem("bilinear_box");
  ResolventOptions inner;
  inner.max_sweeps = 1;
  const auto tr = run_ppa(box, {{1.0}, {0.5}}, Schedule::constant(1.0), {}, inner);
  CHECK(tr.truncated);
  CHECK(tr.stop == StopReason::inner_failure);
  CHECK(tr.iterates.size() == tr.steps.size() + 1);
  CHECK_FALSE(tr.message.empty());
}

TEST_CASE("iterate consistency on a generic entry") {
  const auto& box = find_problem("bilinear_box");
  const auto tr = run_ppa(box, {{1.0}, {0.5}}, Schedule::constant(0.5), {.max_iter = 20});
  ResolventOptions fresh;
  fresh.init = ProductPoint{{-1.0}, {-1.0}};
  for (std::size_t n = 0; n + 1 < tr.iterates.size(); ++n) {
    const auto again = resolvent(box, tr.iterates[n], tr.lambdas[n], fresh);
    CHECK(box.space.distance(again.point, tr.iterates[n + 1]) <= 10 * fresh.inner_tol);
  }
}

TEST_CASE("fejer and residuals across the library") {
  Sampler s(21);
  for (const auto& e : library()) {
    const SaddleProblem& p = e.problem;
    if (!p.known_saddle || !p.certificates.concave_convex()) continue;
    CAPTURE(p.name);
    for (const Schedule& sched : {Schedule::constant(1.0), Schedule::power(1.0, 0.5)}) {
      CAPTURE(sched.describe());
      const ProductPoint z1 = s.product_point(p.space, p.scale_x, p.scale_y);
      // n^(-1/2) steps shrink slowly, so that run is longer before judging it.
      const int iters = sched.kind() == ScheduleKind::constant ? 200 : 2000;
      const auto tr = run_ppa(p, z1, sched, {.max_iter = iters});
      CHECK_FALSE(tr.truncated);
      const auto fe = fejer_check(p.space, tr, *p.known_saddle);
      CHECK(fe.passed);
      const auto rs = residual_series(tr);
      CHECK(rs.monotone);
      const auto v = boundedness_verdict(p.space, tr, 1e3);
      CHECK(v.verdict == Verdict::bounded);
    }
  }
}

TEST_CASE("delta report") {
  const auto& q = find_problem("quadratic2d");
  const auto tr = run_ppa(q, {{1.0, 1.0}, {-1.0, -1.0}}, Schedule::power(1.0, 0.5), {.max_iter = 400});
  const auto rep = delta_report(q.space, tr, q.anchors);
  CHECK(rep.bounded);
  CHECK(rep.consistent);
  CHECK(q.space.distance(tr.iterates.back(), *q.known_saddle) <= 1e-6);
}
