#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "bwmd/errors.hpp"
#include "bwmd/rand.hpp"
#include "bwmd/sequence.hpp"

namespace bwmd {

/// LZ-style phrase set of a sequence, stored as 64-bit phrase fingerprints.
/// `hashes` holds every distinct phrase fingerprint, sorted; `sketch`, when
/// present, holds the k smallest of them (a bottom-k min-hash signature).
struct LzSet {
  std::vector<std::uint64_t> hashes;
  std::optional<std::vector<std::uint64_t>> sketch;

  std::size_t size() const { return hashes.size(); }
};

namespace detail {

// Incremental phrase fingerprint: a multiply-xor rolling state finished with
// the splitmix64 mixer. Extending a phrase by one token is one update, which
// keeps the parse linear in the input length.
inline std::uint64_t phrase_extend(std::uint64_t state, std::uint32_t token) {
  state = (state ^ (token + 1)) * 0x100000001b3ULL;
  return state;
}

constexpr std::uint64_t kPhraseSeed = 0xcbf29ce484222325ULL;

}  // namespace detail

/// Dictionary parse of the sequence: grow the current phrase one token at a
/// time until its fingerprint is new, record it, then start the next phrase
/// from scratch. The final (possibly already-seen) phrase is discarded if it
/// duplicates an entry, matching a set-of-phrases semantics.
inline LzSet lz_set(const Sequence& seq) {
  seq.validate();
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(seq.size() / 2 + 8);
  std::uint64_t state = detail::kPhraseSeed;
  for (std::uint32_t tok : seq.tokens) {
    state = detail::phrase_extend(state, tok);
    std::uint64_t fp = mix64(state);
    if (seen.insert(fp).second) {
      state = detail::kPhraseSeed;  // phrase complete, restart
    }
  }
  LzSet out;
  out.hashes.assign(seen.begin(), seen.end());
  std::sort(out.hashes.begin(), out.hashes.end());
  return out;
}

/// Parse and keep only the k smallest fingerprints as a fixed-size signature.
inline LzSet lz_set(const Sequence& seq, std::size_t sketch_k) {
  if (sketch_k == 0) throw ConfigError("lz_set: sketch size must be positive");
  LzSet full = lz_set(seq);
  std::vector<std::uint64_t> sk = full.hashes;
  if (sk.size() > sketch_k) sk.resize(sketch_k);  // hashes are sorted ascending
  full.sketch = std::move(sk);
  return full;
}

/// Jaccard distance 1 - |A∩B| / |A∪B| over phrase sets. When both operands
/// carry sketches the bottom-k estimate is used instead: take the k smallest
/// of the union of signatures and count how many appear in both.
inline double lzjd_distance(const LzSet& a, const LzSet& b) {
  if (a.sketch && b.sketch) {
    const auto& sa = *a.sketch;
    const auto& sb = *b.sketch;
    if (sa.empty() && sb.empty()) return 0.0;
    std::size_t k = std::max(sa.size(), sb.size());
    std::vector<std::uint64_t> merged;
    merged.reserve(sa.size() + sb.size());
    std::merge(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    if (merged.size() > k) merged.resize(k);
    std::size_t inter = 0;
    for (std::uint64_t h : merged) {
      bool in_a = std::binary_search(sa.begin(), sa.end(), h);
      bool in_b = std::binary_search(sb.begin(), sb.end(), h);
      if (in_a && in_b) ++inter;
    }
    return 1.0 - static_cast<double>(inter) / static_cast<double>(merged.size());
  }

  if (a.hashes.empty() && b.hashes.empty()) return 0.0;
  std::size_t inter = 0;
  std::size_t i = 0, j = 0;
  while (i < a.hashes.size() && j < b.hashes.size()) {
    if (a.hashes[i] == b.hashes[j]) {
      ++inter, ++i, ++j;
    } else if (a.hashes[i] < b.hashes[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  std::size_t uni = a.hashes.size() + b.hashes.size() - inter;
  return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

inline double lzjd_distance(const Sequence& u, const Sequence& v) {
  return lzjd_distance(lz_set(u), lz_set(v));
}

}  // namespace bwmd
