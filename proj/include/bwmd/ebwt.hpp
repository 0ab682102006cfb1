#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "bwmd/errors.hpp"
#include "bwmd/sequence.hpp"

namespace bwmd {

enum class Source : std::uint8_t { U = 0, V = 1 };

/// Interleaving of the two input sequences' rotations in omega-order: one
/// label per rotation, sorted by the infinite periodic extension.
struct MergeTrace {
  std::vector<Source> labels;

  std::string to_string() const {
    std::string s;
    s.reserve(labels.size());
    for (Source l : labels) s.push_back(l == Source::U ? 'u' : 'v');
    return s;
  }
};

namespace detail {

struct Rotation {
  std::uint32_t start;
  Source src;
};

}  // namespace detail

/// Sort all rotations of u and all rotations of v together by omega-order:
/// rotations compare by their infinite periodic extensions. Comparing the
/// first 2*max(|u|,|v|) symbols decides every non-equal pair (two periodic
/// words of periods p, q that agree on p + q symbols are extensions of the
/// same primitive word, by Fine and Wilf). Omega-equal rotations tie-break
/// by (length, source u-before-v, start index) so the order is total and
/// deterministic.
inline MergeTrace ebwt_merge(const Sequence& u, const Sequence& v) {
  u.validate();
  v.validate();
  if (u.empty() || v.empty())
    throw DegenerateInputError("ebwt_merge: both sequences must be non-empty");
  if (u.alphabet_size != v.alphabet_size)
    throw ConfigError("ebwt_merge: alphabet mismatch (" + std::to_string(u.alphabet_size) +
                      " vs " + std::to_string(v.alphabet_size) + ")");

  const std::size_t nu = u.size(), nv = v.size();
  const std::size_t limit = 2 * std::max(nu, nv);

  // Unroll each sequence far enough that any window of `limit` symbols from a
  // rotation is contiguous; the comparator then runs without modular indexing.
  auto unroll = [&](const std::vector<std::uint32_t>& t) {
    std::vector<std::uint32_t> ext(t.size() + limit);
    for (std::size_t i = 0; i < ext.size(); ++i) ext[i] = t[i % t.size()];
    return ext;
  };
  const std::vector<std::uint32_t> ext_u = unroll(u.tokens);
  const std::vector<std::uint32_t> ext_v = unroll(v.tokens);

  std::vector<detail::Rotation> rots;
  rots.reserve(nu + nv);
  for (std::size_t i = 0; i < nu; ++i) rots.push_back({static_cast<std::uint32_t>(i), Source::U});
  for (std::size_t i = 0; i < nv; ++i) rots.push_back({static_cast<std::uint32_t>(i), Source::V});

  auto base = [&](Source s) { return s == Source::U ? ext_u.data() : ext_v.data(); };
  auto compare = [&](const detail::Rotation& a, const detail::Rotation& b) {
    const std::uint32_t* pa = base(a.src) + a.start;
    const std::uint32_t* pb = base(b.src) + b.start;
    for (std::size_t t = 0; t < limit; ++t)
      if (pa[t] != pb[t]) return pa[t] < pb[t];
    std::size_t la = a.src == Source::U ? nu : nv;
    std::size_t lb = b.src == Source::U ? nu : nv;
    if (la != lb) return la < lb;
    if (a.src != b.src) return a.src == Source::U;
    return a.start < b.start;
  };
  std::sort(rots.begin(), rots.end(), compare);

  MergeTrace trace;
  trace.labels.reserve(rots.size());
  for (const auto& r : rots) trace.labels.push_back(r.src);
  return trace;
}

/// Distance read off an interleaving: sum over positions of max(rep - 1, 0)
/// where rep counts how often the source label repeats consecutively, which
/// collapses to (|u| + |v|) - (number of runs in the trace).
inline std::uint64_t ebwt_distance(const MergeTrace& trace) {
  if (trace.labels.empty()) return 0;
  std::uint64_t runs = 1;
  for (std::size_t i = 1; i < trace.labels.size(); ++i)
    if (trace.labels[i] != trace.labels[i - 1]) ++runs;
  return static_cast<std::uint64_t>(trace.labels.size()) - runs;
}

inline std::uint64_t ebwt_distance(const Sequence& u, const Sequence& v) {
  return ebwt_distance(ebwt_merge(u, v));
}

/// ebwt distance scaled into [0, 1] by its maximum (|u| + |v| - 2), which is
/// attained when the trace is two solid blocks.
inline double ebwt_distance_normalized(const Sequence& u, const Sequence& v) {
  const std::size_t total = u.size() + v.size();
  if (total <= 2)
    throw DegenerateInputError("ebwt_distance_normalized: |u| + |v| must exceed 2");
  return static_cast<double>(ebwt_distance(u, v)) / static_cast<double>(total - 2);
}

}  // namespace bwmd
