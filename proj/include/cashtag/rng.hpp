#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace cashtag {

// Mixes a 64-bit value into an independent stream seed (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Unbiased draw from [0, n).  Hand-rolled rejection sampling instead of
// std::uniform_int_distribution, whose output sequence is implementation
// defined; reproducibility of splits and partitions depends on this.
inline std::uint64_t bounded_uint64(std::mt19937_64 &gen, std::uint64_t n) {
  if (n == 0) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t reject_above = max - (max % n + 1) % n;
  while (true) {
    std::uint64_t v = gen();
    if (v <= reject_above || reject_above == max) return v % n;
  }
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64 &gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Fisher-Yates over 0..n-1 with the bounded draw above.
inline std::vector<std::size_t> shuffled_indices(std::size_t n, std::mt19937_64 &gen) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(bounded_uint64(gen, i));
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

template <typename T>
void shuffle_in_place(std::vector<T> &v, std::mt19937_64 &gen) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(bounded_uint64(gen, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace cashtag
