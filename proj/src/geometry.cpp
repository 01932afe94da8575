#include "gm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gm {

ComparisonTriangle comparison_triangle(double a, double b, double c) {
  for (double s : {a, b, c}) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw Error(ErrorKind::triangle_inequality_violated, "side lengths must be finite and nonnegative");
    }
  }
  const double longest = std::max({a, b, c});
  const double slack = 1e-12 * longest;
  if (a > b + c + slack || b > c + a + slack || c > a + b + slack) {
    throw Error(ErrorKind::triangle_inequality_violated,
                "sides " + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c));
  }
  ComparisonTriangle tri;
  if (longest == 0.0) return tri;

  // Relabel so that the longest side runs from P̄ = (0,0) to Q̄ = (L,0) and R̄
  // is the opposite vertex; `rp` and `qr` are the other two sides.
  Vec2* P = nullptr;
  Vec2* Q = nullptr;
  Vec2* R = nullptr;
  double rp = 0.0;
  double qr = 0.0;
  if (c >= a && c >= b) {
    P = &tri.x, Q = &tri.y, R = &tri.z, rp = b, qr = a;
  } else if (a >= b) {
    P = &tri.y, Q = &tri.z, R = &tri.x, rp = c, qr = b;
  } else {
    P = &tri.z, Q = &tri.x, R = &tri.y, rp = a, qr = c;
  }
  const double L = longest;

  // Heron's product in the cancellation-free ordering p >= q >= r.
  double s[3] = {L, rp, qr};
  std::sort(s, s + 3, std::greater<>());
  const double p = s[0], q = s[1], r = s[2];
  const double heron = (p + (q + r)) * (r - (p - q)) * (r + (p - q)) * (p + (q - r));

  *P = {0.0, 0.0};
  *Q = {L, 0.0};
  *R = {(rp * rp + (L - qr) * (L + qr)) / (2.0 * L), std::sqrt(std::max(0.0, heron)) / (2.0 * L)};
  return tri;
}

}  // namespace gm
