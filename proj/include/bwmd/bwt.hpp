#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "bwmd/errors.hpp"
#include "bwmd/sequence.hpp"
#include "bwmd/suffix_array.hpp"

namespace bwmd {

/// BWT of a sequence terminated by a sentinel. The sentinel is encoded as the
/// extra token id alphabet_size and sorts before every ordinary token.
struct BwtOutput {
  std::vector<std::uint32_t> tokens;
  std::uint32_t alphabet_size = 0;
  std::size_t sentinel_index = 0;

  std::size_t size() const { return tokens.size(); }
  bool is_sentinel(std::size_t i) const { return tokens[i] == alphabet_size; }
};

/// Sentinel-terminated BWT via the suffix array of the shifted text
/// (every token + 1, sentinel = 0). Sorting suffixes of text$ is equivalent
/// to sorting rotations of text$ because the sentinel is unique and smallest.
inline BwtOutput bwt(const Sequence& seq) {
  seq.validate();
  const std::size_t n = seq.size();
  std::vector<std::uint32_t> shifted(n + 1);
  for (std::size_t i = 0; i < n; ++i) shifted[i] = seq.tokens[i] + 1;
  shifted[n] = 0;

  std::vector<std::uint32_t> sa = build_suffix_array(shifted);

  BwtOutput out;
  out.alphabet_size = seq.alphabet_size;
  out.tokens.resize(n + 1);
  for (std::size_t j = 0; j < n + 1; ++j) {
    if (sa[j] == 0) {
      out.tokens[j] = seq.alphabet_size;  // row starting at position 0 ends with the sentinel
      out.sentinel_index = j;
    } else {
      out.tokens[j] = shifted[sa[j] - 1] - 1;
    }
  }
  return out;
}

/// Reference implementation that materializes and sorts all rotations of
/// text$. Quadratic-space, so inputs are capped; exists to cross-check bwt().
inline BwtOutput bwt_rotation_sort(const Sequence& seq) {
  seq.validate();
  const std::size_t n = seq.size();
  if (n > 10000)
    throw ConfigError("bwt_rotation_sort: input of length " + std::to_string(n) +
                      " exceeds the 10000-token cap for the quadratic reference");

  const std::size_t m = n + 1;
  std::vector<std::uint32_t> text(m);
  for (std::size_t i = 0; i < n; ++i) text[i] = seq.tokens[i] + 1;
  text[n] = 0;

  std::vector<std::vector<std::uint32_t>> rotations(m);
  for (std::size_t r = 0; r < m; ++r) {
    rotations[r].resize(m);
    for (std::size_t i = 0; i < m; ++i) rotations[r][i] = text[(r + i) % m];
  }
  std::sort(rotations.begin(), rotations.end());

  BwtOutput out;
  out.alphabet_size = seq.alphabet_size;
  out.tokens.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::uint32_t last = rotations[j].back();
    if (last == 0) {
      out.tokens[j] = seq.alphabet_size;
      out.sentinel_index = j;
    } else {
      out.tokens[j] = last - 1;
    }
  }
  return out;
}

/// Render a BWT over a byte-like alphabet as text, with '$' for the sentinel.
/// Tokens are shown via the same ascii convention as Sequence::from_ascii.
inline std::string to_display_string(const BwtOutput& b) {
  std::string s;
  s.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.is_sentinel(i))
      s.push_back('$');
    else if (b.alphabet_size <= 26)
      s.push_back(static_cast<char>('a' + b.tokens[i]));
    else
      s.push_back(static_cast<char>(b.tokens[i]));
  }
  return s;
}

}  // namespace bwmd
