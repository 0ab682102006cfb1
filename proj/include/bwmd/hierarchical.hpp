#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "bwmd/dendrogram.hpp"
#include "bwmd/distance_matrix.hpp"
#include "bwmd/errors.hpp"

namespace bwmd {

enum class Linkage { Single, Average };

namespace detail {

// Turn an unordered list of pairwise agglomerations into a Dendrogram:
// stable-sort by height, then track the current node id of every growing
// cluster with a union-find so merge operands refer to the right nodes.
struct RawMerge {
  std::size_t a;
  std::size_t b;
  double height;
};

inline Dendrogram assemble_dendrogram(std::vector<RawMerge> raw,
                                      std::vector<std::string> leaf_labels) {
  const std::size_t n = leaf_labels.size();
  std::stable_sort(raw.begin(), raw.end(),
                   [](const RawMerge& x, const RawMerge& y) { return x.height < y.height; });

  Dendrogram out;
  out.leaf_count = n;
  out.leaf_labels = std::move(leaf_labels);
  out.merges.reserve(n - 1);

  UnionFind uf(n);
  std::vector<std::size_t> node_of(n);
  std::iota(node_of.begin(), node_of.end(), std::size_t{0});

  std::size_t next_id = n;
  for (const RawMerge& m : raw) {
    std::size_t ra = uf.find(m.a);
    std::size_t rb = uf.find(m.b);
    std::size_t left = node_of[ra], right = node_of[rb];
    if (left > right) std::swap(left, right);
    out.merges.push_back({left, right, m.height, next_id});
    uf.unite(ra, rb);
    node_of[uf.find(ra)] = next_id++;
  }
  return out;
}

}  // namespace detail

/// Single linkage by the SLINK pointer-representation algorithm (Sibson 1973):
/// one pass per point maintaining, for each previously seen point, the lowest
/// level at which it joins a later-indexed point. O(n^2) time, O(n) working
/// memory beyond the input matrix.
inline Dendrogram single_linkage(const DistanceMatrix& dist) {
  const std::size_t n = dist.size();
  if (n < 2) throw ConfigError("single_linkage: need at least two items");
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> pi(n);
  std::vector<double> lambda(n, kInf), row(n);

  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = i;
    lambda[i] = kInf;
    for (std::size_t j = 0; j < i; ++j) row[j] = dist(i, j);
    for (std::size_t j = 0; j < i; ++j) {
      if (lambda[j] >= row[j]) {
        row[pi[j]] = std::min(row[pi[j]], lambda[j]);
        lambda[j] = row[j];
        pi[j] = i;
      } else {
        row[pi[j]] = std::min(row[pi[j]], row[j]);
      }
    }
    for (std::size_t j = 0; j < i; ++j)
      if (lambda[j] >= lambda[pi[j]]) pi[j] = i;
  }

  std::vector<detail::RawMerge> raw;
  raw.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    if (lambda[i] < kInf) raw.push_back({i, pi[i], lambda[i]});

  std::vector<std::string> labels(dist.labels().begin(), dist.labels().end());
  return detail::assemble_dendrogram(std::move(raw), std::move(labels));
}

/// Average linkage (UPGMA) with the nearest-neighbor chain algorithm and the
/// Lance-Williams update d(a∪b, x) = (|a| d(a,x) + |b| d(b,x)) / (|a|+|b|).
/// Works on a mutable copy of the matrix: O(n^2) time and memory.
inline Dendrogram average_linkage(const DistanceMatrix& dist) {
  const std::size_t n = dist.size();
  if (n < 2) throw ConfigError("average_linkage: need at least two items");
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Full square working copy; rows die as clusters are absorbed.
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = dist(i, j);

  std::vector<std::size_t> size(n, 1);
  std::vector<char> active(n, 1);
  std::vector<std::size_t> chain;
  chain.reserve(n);

  std::vector<detail::RawMerge> raw;
  raw.reserve(n - 1);

  auto nearest = [&](std::size_t a) {
    double best = kInf;
    std::size_t arg = a;
    for (std::size_t x = 0; x < n; ++x) {
      if (!active[x] || x == a) continue;
      if (d[a * n + x] < best) {
        best = d[a * n + x];
        arg = x;
      }
    }
    return arg;
  };

  std::size_t merges_done = 0;
  while (merges_done < n - 1) {
    if (chain.empty()) {
      for (std::size_t x = 0; x < n; ++x)
        if (active[x]) {
          chain.push_back(x);
          break;
        }
    }
    std::size_t a = chain.back();
    std::size_t b = nearest(a);
    if (chain.size() >= 2 && b != chain[chain.size() - 2]) {
      // keep growing unless a and its nearest neighbor are mutual
      std::size_t prev = chain[chain.size() - 2];
      if (d[a * n + b] == d[a * n + prev]) b = prev;  // equal distance: treat as reciprocal
    }
    if (chain.size() >= 2 && b == chain[chain.size() - 2]) {
      chain.pop_back();
      chain.pop_back();
      double h = d[a * n + b];
      raw.push_back({a, b, h});
      ++merges_done;
      // fold b into a
      std::size_t sa = size[a], sb = size[b];
      for (std::size_t x = 0; x < n; ++x) {
        if (!active[x] || x == a || x == b) continue;
        double v = (static_cast<double>(sa) * d[a * n + x] + static_cast<double>(sb) * d[b * n + x]) /
                   static_cast<double>(sa + sb);
        d[a * n + x] = v;
        d[x * n + a] = v;
      }
      size[a] = sa + sb;
      active[b] = 0;
    } else {
      chain.push_back(b);
    }
  }

  std::vector<std::string> labels(dist.labels().begin(), dist.labels().end());
  return detail::assemble_dendrogram(std::move(raw), std::move(labels));
}

inline Dendrogram hierarchical_cluster(const DistanceMatrix& dist, Linkage linkage) {
  return linkage == Linkage::Single ? single_linkage(dist) : average_linkage(dist);
}

}  // namespace bwmd
