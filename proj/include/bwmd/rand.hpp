#pragma once

#include <cstdint>
#include <random>

namespace bwmd {

/// splitmix64 finalizer. Used both as a bit mixer for fingerprints and to
/// derive independent substreams from a user seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64(stream));
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(seed, a), b);
}

/// mt19937_64 wrapped with hand-rolled uniform helpers. The standard
/// distribution classes have implementation-defined output, which would make
/// recorded expected values compiler-specific; these helpers pin the exact
/// value stream everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), n > 0. Rejection-free modulo of a 64-bit draw;
  /// bias is below 2^-32 for all n used here (n well under 2^32).
  std::uint64_t next_below(std::uint64_t n) { return gen_() % n; }

  /// Fisher-Yates shuffle of [first, last).
  template <typename It>
  void shuffle(It first, It last) {
    auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      std::uint64_t j = next_below(i);
      std::swap(first[i - 1], first[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace bwmd
