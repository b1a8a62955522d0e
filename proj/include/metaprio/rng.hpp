#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace metaprio {

// std::uniform_int_distribution is implementation-defined, so identical seeds
// can produce different streams across standard libraries. Rejection sampling
// over raw mt19937_64 output keeps every artifact byte-reproducible.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % n;
}

// Fisher–Yates with the portable sampler above.
template <typename T>
void shuffle_deterministic(std::vector<T>& v, std::mt19937_64& gen) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(gen, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace metaprio
