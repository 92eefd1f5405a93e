#pragma once

// Seeded randomness helpers. std::mt19937_64 output is pinned by the
// standard; the mappings below avoid the implementation-defined std
// distributions so that seeded runs produce identical streams everywhere.

#include <cstdint>
#include <random>
#include <vector>

namespace equivec {

using Rng = std::mt19937_64;

inline double next_double(Rng& rng) {
  // 53-bit mantissa in [0, 1)
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double next_double(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * next_double(rng);
}

inline std::uint64_t next_index(Rng& rng, std::uint64_t n) {
  // rejection sampling keeps the draw exactly uniform
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

inline long long next_int(Rng& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(
                  next_index(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[next_index(rng, i)]);
  }
}

// Stable derivation of per-item seeds from a run seed (splitmix64 step).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace equivec
