#include "risplit/rng.hpp"

#include <cmath>

namespace risplit {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
  // Distinct tags land on distinct points of the SplitMix64 sequence
  // started at `base`; the finalizer decorrelates neighbouring tags.
  return mix64(base + kGamma * (tag + 1));
}

double GaussianSource::unit01() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

void GaussianSource::pair(double& z0, double& z1) {
  // Box-Muller.  1-u keeps the log argument in (0, 1]; u2 spins the angle.
  const double u1 = unit01();
  const double u2 = unit01();
  const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double a = 2.0 * M_PI * u2;
  z0 = r * std::cos(a);
  z1 = r * std::sin(a);
}

}  // namespace risplit
