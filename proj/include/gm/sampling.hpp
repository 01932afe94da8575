#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gm/space.hpp"

namespace gm {

/// Seeded source of points and scalars for fuzzing. Uniforms are built from
/// raw 64-bit draws so sequences are identical across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::size_t index(std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n))); }

  std::vector<double> uniforms(std::size_t n) {
    std::vector<double> u(n);
    for (double& x : u) x = uniform();
    return u;
  }

  Point point(const Space& space, double scale) { return space.from_unit(uniforms(space.unit_dim()), scale); }

  ProductPoint product_point(const ProductSpace& space, double scale_x, double scale_y) {
    return {point(space.left(), scale_x), point(space.right(), scale_y)};
  }

 private:
  std::mt19937_64 rng_;
};

/// k-th point (k >= 1) of the Halton sequence in the given number of
/// dimensions, using the first primes as bases.
std::vector<double> halton(std::uint64_t k, std::size_t dims);

}  // namespace gm
