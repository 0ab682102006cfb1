#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "bwmd/errors.hpp"

namespace bwmd {

/// k nearest neighbors of one query: item ids sorted by ascending distance,
/// ties broken by ascending id. `distance_evaluations` counts metric calls
/// made to answer the query, the cost measure shared by all index types.
struct NeighborResult {
  std::vector<std::size_t> ids;
  std::vector<double> distances;
  std::size_t distance_evaluations = 0;
};

/// Exact k-NN by scanning every item. `dist(i)` returns the distance from
/// the query to item i.
template <typename DistFn>
NeighborResult knn_brute(std::size_t corpus_size, std::size_t k, DistFn&& dist) {
  if (corpus_size == 0) throw ConfigError("knn_brute: empty corpus");
  if (k == 0) throw ConfigError("knn_brute: k must be positive");
  if (k > corpus_size) k = corpus_size;

  std::vector<std::pair<double, std::size_t>> all(corpus_size);
  for (std::size_t i = 0; i < corpus_size; ++i) all[i] = {dist(i), i};
  std::partial_sort(all.begin(), all.begin() + k, all.end());

  NeighborResult out;
  out.distance_evaluations = corpus_size;
  out.ids.reserve(k);
  out.distances.reserve(k);
  for (std::size_t t = 0; t < k; ++t) {
    out.distances.push_back(all[t].first);
    out.ids.push_back(all[t].second);
  }
  return out;
}

/// Majority vote among the neighbor labels; ties go to the smallest label id
/// so classification is deterministic.
struct VoteResult {
  std::uint32_t label = 0;
  double positive_fraction = 0.0;  // share of neighbors carrying `positive_label`
};

inline VoteResult majority_vote(const NeighborResult& nn, std::span<const std::uint32_t> item_labels,
                                std::uint32_t positive_label = 1) {
  if (nn.ids.empty()) throw ConfigError("majority_vote: no neighbors");
  std::vector<std::pair<std::uint32_t, std::size_t>> tally;  // label -> votes
  std::size_t positives = 0;
  for (std::size_t id : nn.ids) {
    if (id >= item_labels.size()) throw ConfigError("majority_vote: neighbor id out of range");
    std::uint32_t l = item_labels[id];
    if (l == positive_label) ++positives;
    auto it = std::find_if(tally.begin(), tally.end(),
                           [l](const auto& p) { return p.first == l; });
    if (it == tally.end())
      tally.push_back({l, 1});
    else
      ++it->second;
  }
  VoteResult v;
  v.positive_fraction = static_cast<double>(positives) / static_cast<double>(nn.ids.size());
  std::size_t best = 0;
  std::uint32_t best_label = std::numeric_limits<std::uint32_t>::max();
  for (const auto& [l, c] : tally)
    if (c > best || (c == best && l < best_label)) {
      best = c;
      best_label = l;
    }
  v.label = best_label;
  return v;
}

}  // namespace bwmd
