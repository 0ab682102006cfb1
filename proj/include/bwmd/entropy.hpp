#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "bwmd/errors.hpp"
#include "bwmd/rand.hpp"
#include "bwmd/sequence.hpp"

namespace bwmd {

/// Normalized entropy (base-sigma, so in [0, 1]) of the one-heavy-symbol
/// family: symbol 0 has probability p, the rest share 1 - p evenly.
inline double heavy_family_entropy(std::uint32_t sigma, double p) {
  if (p >= 1.0) return 0.0;
  double rest = (1.0 - p) / static_cast<double>(sigma - 1);
  double h = -p * std::log(p);
  h -= (1.0 - p) * std::log(rest);
  return h / std::log(static_cast<double>(sigma));
}

/// Invert heavy_family_entropy by bisection: find p in [1/sigma, 1] whose
/// normalized entropy matches the target. The function is strictly
/// decreasing on that interval, so bisection converges; the interval is
/// shrunk to machine precision, far below the 1e-6 guarantee.
inline double heavy_symbol_probability(std::uint32_t sigma, double target) {
  if (sigma < 2) throw ConfigError("heavy_symbol_probability: alphabet must have >= 2 symbols");
  if (target < 0.0 || target > 1.0)
    throw ConfigError("heavy_symbol_probability: target entropy must lie in [0, 1]");
  double lo = 1.0 / static_cast<double>(sigma);  // entropy 1 here
  double hi = 1.0;                               // entropy 0 here
  if (target >= 1.0) return lo;
  if (target <= 0.0) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    double mid = 0.5 * (lo + hi);
    if (heavy_family_entropy(sigma, mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct EntropySpec {
  std::uint32_t alphabet_size = 32;
  double target_entropy = 1.0;  // normalized, 1 = uniform
  std::size_t length = 0;
  std::uint64_t seed = 0;
};

/// Draw an iid sequence from the heavy-symbol distribution hitting the
/// target normalized entropy. One uniform draw per token: the unit interval
/// is split into [0, p) for symbol 0 and equal slices for the rest.
inline Sequence gen_entropy_sequence(const EntropySpec& spec) {
  if (spec.length == 0) throw ConfigError("gen_entropy_sequence: length must be positive");
  double p = heavy_symbol_probability(spec.alphabet_size, spec.target_entropy);
  Rng rng(spec.seed);
  Sequence s;
  s.alphabet_size = spec.alphabet_size;
  s.tokens.reserve(spec.length);
  const double span = 1.0 - p;
  for (std::size_t i = 0; i < spec.length; ++i) {
    double r = rng.next_unit();
    if (r < p || span <= 0.0) {
      s.tokens.push_back(0);
    } else {
      double u = (r - p) / span;  // uniform over the remaining symbols
      auto idx = static_cast<std::uint32_t>(u * static_cast<double>(spec.alphabet_size - 1));
      if (idx >= spec.alphabet_size - 1) idx = spec.alphabet_size - 2;
      s.tokens.push_back(1 + idx);
    }
  }
  return s;
}

/// Uniform iid sequence over the whole alphabet.
inline Sequence gen_uniform_sequence(std::uint32_t sigma, std::size_t length, std::uint64_t seed) {
  if (sigma == 0) throw ConfigError("gen_uniform_sequence: empty alphabet");
  if (length == 0) throw ConfigError("gen_uniform_sequence: length must be positive");
  Rng rng(seed);
  Sequence s;
  s.alphabet_size = sigma;
  s.tokens.reserve(length);
  for (std::size_t i = 0; i < length; ++i)
    s.tokens.push_back(static_cast<std::uint32_t>(rng.next_below(sigma)));
  return s;
}

}  // namespace bwmd
