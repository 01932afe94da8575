#include "gm/line_search.hpp"

#include <algorithm>
#include <cmath>

namespace gm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

double finite_or_inf(double v) { return std::isfinite(v) ? v : kInf; }

struct Tracker {
  LineMinimum best;

  void offer(double arg, double value) {
    if (value < best.value || (value == best.value && arg < best.arg)) {
      best.arg = arg;
      best.value = value;
    }
  }
};

// One parabolic step through a symmetric stencil around the golden estimate.
// The golden result is only resolved to about sqrt(eps) in the argument, the
// parabola through three well separated points is not.
LineMinimum polish(const std::function<double(double)>& f, double lo, double hi, LineMinimum est,
                   const LineSearchOptions& opts) {
  const double h = opts.polish_step * std::max(1.0, std::abs(est.arg));
  if (h <= 0.0 || !std::isfinite(est.value)) return est;
  if (est.arg - h < lo || est.arg + h > hi) return est;
  const double fm = finite_or_inf(f(est.arg - h));
  const double fp = finite_or_inf(f(est.arg + h));
  if (!std::isfinite(fm) || !std::isfinite(fp)) return est;
  const double curvature = fp - 2.0 * est.value + fm;
  if (!(curvature > 0.0)) return est;
  const double shift = -h * (fp - fm) / (2.0 * curvature);
  if (std::abs(shift) > h) return est;
  const double arg = est.arg + shift;
  const double value = finite_or_inf(f(arg));
  const double noise = 16.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(est.value));
  if (value <= est.value + noise) return {arg, value};
  return est;
}

}  // namespace

LineMinimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                           const LineSearchOptions& opts) {
  Tracker t;
  double a = lo;
  double b = hi;
  t.offer(a, finite_or_inf(f(a)));
  if (b == a) return t.best;
  t.offer(b, finite_or_inf(f(b)));

  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = finite_or_inf(f(c));
  double fd = finite_or_inf(f(d));
  t.offer(c, fc);
  t.offer(d, fd);

  for (int it = 0; it < opts.max_iterations && (b - a) > opts.tol * (1.0 + std::abs(a) + std::abs(b));
       ++it) {
    // Ties keep the left part so the smallest minimizer is retained.
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = finite_or_inf(f(c));
      t.offer(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = finite_or_inf(f(d));
      t.offer(d, fd);
    }
  }
  return t.best;
}

LineMinimum minimize_on_line(const std::function<double(double)>& f, double lo, double hi,
                             const LineSearchOptions& opts) {
  if (std::isfinite(lo) && std::isfinite(hi)) {
    return polish(f, lo, hi, golden_section(f, lo, hi, opts), opts);
  }

  // Bracket from 0 by doubling towards the descending side, clamped to the
  // finite bound if there is one.
  const double f0 = finite_or_inf(f(0.0));
  double step = opts.initial_step;
  auto clamp = [&](double s) { return std::clamp(s, lo, hi); };
  const double fp = finite_or_inf(f(clamp(step)));
  const double fm = finite_or_inf(f(clamp(-step)));

  double left = 0.0;
  double right = 0.0;
  if (f0 <= fp && f0 <= fm) {
    left = clamp(-step);
    right = clamp(step);
  } else {
    const double dir = fp < fm ? 1.0 : -1.0;
    double prev = 0.0;
    double cur = clamp(dir * step);
    double fcur = dir > 0 ? fp : fm;
    bool bracketed = false;
    for (int k = 0; k < opts.max_expansions; ++k) {
      if (cur == lo || cur == hi) break;
      step *= 2.0;
      const double next = clamp(dir * step);
      const double fnext = finite_or_inf(f(next));
      if (fnext >= fcur) {
        left = std::min(prev, next);
        right = std::max(prev, next);
        bracketed = true;
        break;
      }
      prev = cur;
      cur = next;
      fcur = fnext;
    }
    if (!bracketed) {
      left = std::min(prev, cur);
      right = std::max(prev, cur);
    }
  }
  LineMinimum m = golden_section(f, left, right, opts);
  if (f0 < m.value) m = {0.0, f0};
  return polish(f, lo, hi, m, opts);
}

}  // namespace gm
