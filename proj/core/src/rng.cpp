#include "snl/rng.hpp"

#include <cmath>
#include <algorithm>
#include <numbers>

namespace snl {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(base) ^ splitmix64(stream + 0x632BE59BD9B4E019ull));
}

double Rng::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::below(std::uint64_t k) {
  if (k <= 1) return 0;
  const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % k);
  std::uint64_t r = next();
  while (r >= limit) r = next();
  return r % k;
}

std::vector<int> Rng::sample_subset(const std::vector<int>& items, std::size_t count) {
  if (count >= items.size()) return items;
  // Partial Fisher-Yates over positions, then restore the input order.
  std::vector<std::size_t> pos(items.size());
  for (std::size_t t = 0; t < pos.size(); ++t) pos[t] = t;
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t r = t + static_cast<std::size_t>(below(pos.size() - t));
    std::swap(pos[t], pos[r]);
  }
  pos.resize(count);
  std::sort(pos.begin(), pos.end());
  std::vector<int> out;
  out.reserve(count);
  for (std::size_t p : pos) out.push_back(items[p]);
  return out;
}

}  // namespace snl
