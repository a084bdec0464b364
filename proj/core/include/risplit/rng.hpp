#pragma once

#include <cstdint>
#include <random>

namespace risplit {

// Derives an independent sub-seed from a base seed and a tag (trial number,
// stream id, ...).  SplitMix64 finalizer: cheap, well mixed, and stable, so
// experiment layouts like seed(master, trial) -> seed(trial_seed, stream)
// give disjoint streams without bookkeeping.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag);

// Standard-normal generator with a pinned algorithm.
//
// std::normal_distribution is implementation-defined, which would make
// results differ between standard libraries.  mt19937_64 itself is fully
// specified, so mt19937_64 + an explicit Box-Muller transform gives
// bit-identical output everywhere.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : eng_(seed) {}

  // Draws one pair of independent standard normals.
  void pair(double& z0, double& z1);

 private:
  double unit01();  // uniform in [0, 1), 53-bit resolution

  std::mt19937_64 eng_;
};

}  // namespace risplit
