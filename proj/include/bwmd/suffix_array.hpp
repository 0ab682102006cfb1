#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace bwmd {

/// Suffix array by prefix doubling with counting sorts: O(n log n) time,
/// O(n) extra space. Ties between suffixes that share a prefix of length k
/// are broken by rank of the suffix k positions later; suffixes running off
/// the end rank lowest, which matches plain lexicographic order.
inline std::vector<std::uint32_t> build_suffix_array(std::span<const std::uint32_t> text) {
  const std::size_t n = text.size();
  std::vector<std::uint32_t> sa(n);
  if (n == 0) return sa;
  std::vector<std::uint32_t> rank(n), tmp(n), sa2(n);

  std::iota(sa.begin(), sa.end(), 0u);
  std::sort(sa.begin(), sa.end(),
            [&](std::uint32_t a, std::uint32_t b) { return text[a] < text[b]; });
  rank[sa[0]] = 0;
  for (std::size_t i = 1; i < n; ++i)
    rank[sa[i]] = rank[sa[i - 1]] + (text[sa[i]] != text[sa[i - 1]] ? 1 : 0);

  std::vector<std::uint32_t> count;
  for (std::size_t k = 1; rank[sa[n - 1]] != n - 1; k <<= 1) {
    // Arrange indices by second key (rank k positions ahead). Suffixes with
    // no second key compare lowest, so they come first; the rest follow in
    // the order of the previous pass, which is exactly second-key order.
    std::size_t p = 0;
    for (std::size_t i = n - std::min(n, k); i < n; ++i) sa2[p++] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < n; ++i)
      if (sa[i] >= k) sa2[p++] = sa[i] - static_cast<std::uint32_t>(k);

    // Stable counting sort by first key.
    std::size_t classes = rank[sa[n - 1]] + 1;
    count.assign(classes + 1, 0);
    for (std::size_t i = 0; i < n; ++i) ++count[rank[i] + 1];
    for (std::size_t i = 1; i <= classes; ++i) count[i] += count[i - 1];
    for (std::size_t i = 0; i < n; ++i) sa[count[rank[sa2[i]]]++] = sa2[i];

    tmp[sa[0]] = 0;
    auto key2 = [&](std::uint32_t s) {
      return s + k < n ? rank[s + k] + 1 : 0u;  // 0 = past the end, ranks lowest
    };
    for (std::size_t i = 1; i < n; ++i) {
      bool same = rank[sa[i]] == rank[sa[i - 1]] && key2(sa[i]) == key2(sa[i - 1]);
      tmp[sa[i]] = tmp[sa[i - 1]] + (same ? 0 : 1);
    }
    rank.swap(tmp);
  }
  return sa;
}

}  // namespace bwmd
