#include "gm/sampling.hpp"

#include <array>

namespace gm {

std::vector<double> halton(std::uint64_t k, std::size_t dims) {
  static constexpr std::array<std::uint64_t, 16> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  if (dims > kPrimes.size()) throw Error(ErrorKind::parameter_out_of_range, "halton supports up to 16 dimensions");
  std::vector<double> out(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    const std::uint64_t base = kPrimes[d];
    double f = 1.0;
    double r = 0.0;
    for (std::uint64_t i = k; i > 0; i /= base) {
      f /= static_cast<double>(base);
      r += f * static_cast<double>(i % base);
    }
    out[d] = r;
  }
  return out;
}

}  // namespace gm
