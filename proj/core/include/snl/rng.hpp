#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace snl {

// Portable random stream.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The standard distributions are not portable across library
// implementations, so uniform and Gaussian draws are computed here:
//   uniform01  = (next() >> 11) * 2^-53
//   normal     = Box-Muller on two uniform01 draws (cosine branch only)
//   below(k)   = rejection sampling on the top bits
//
// Streams are split with splitmix64: derive_seed(base, stream) feeds
// base and stream through the splitmix64 finalizer, so sibling streams of
// one base seed are decorrelated and reproducible everywhere.
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double normal();
  // Uniform integer in [0, k).
  std::uint64_t below(std::uint64_t k);

  // Uniformly random subset of size `count` drawn from `items`, returned in
  // the original relative order.
  std::vector<int> sample_subset(const std::vector<int>& items, std::size_t count);

 private:
  std::mt19937_64 engine_;
};

}  // namespace snl
