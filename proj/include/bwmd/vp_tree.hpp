#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "bwmd/errors.hpp"
#include "bwmd/knn.hpp"
#include "bwmd/rand.hpp"

namespace bwmd {

/// Exact metric-space index. Every node holds a vantage point and the median
/// distance to the remaining items; queries prune whole subtrees with the
/// triangle inequality, so results always match brute force while usually
/// evaluating far fewer distances.
///
/// Vantage points are chosen from a seeded candidate sample by minimum
/// variance of distances to a probe sample, the selection rule that measured
/// best for this family of metrics.
template <typename Point, typename Metric>
class VpTree {
 public:
  struct Node {
    std::uint32_t item;            // index into points_
    double radius = 0.0;           // median distance to items below this node
    std::int32_t inner = -1;       // subtree with d(vp, x) <= radius
    std::int32_t outer = -1;       // subtree with d(vp, x) > radius
  };

  VpTree(std::vector<Point> points, Metric metric, std::uint64_t seed = 0x5eedULL)
      : points_(std::move(points)), metric_(std::move(metric)) {
    if (points_.empty()) throw ConfigError("VpTree: empty point set");
    Rng rng(seed);
    std::vector<std::uint32_t> items(points_.size());
    std::iota(items.begin(), items.end(), 0u);
    nodes_.reserve(points_.size());
    root_ = build(items.data(), items.size(), rng);
  }

  /// Construct from parts, for deserialization.
  VpTree(std::vector<Point> points, Metric metric, std::vector<Node> nodes, std::int32_t root,
         std::size_t build_evals)
      : points_(std::move(points)),
        metric_(std::move(metric)),
        nodes_(std::move(nodes)),
        root_(root),
        build_evals_(build_evals) {}

  std::size_t size() const { return points_.size(); }
  std::size_t build_distance_evaluations() const { return build_evals_; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::int32_t root() const { return root_; }

  NeighborResult query(const Point& q, std::size_t k) const {
    if (k == 0) throw ConfigError("VpTree::query: k must be positive");
    if (k > points_.size()) k = points_.size();

    // max-heap of the best k (distance, id) pairs seen so far
    std::priority_queue<std::pair<double, std::size_t>> best;
    std::size_t evals = 0;
    double tau = std::numeric_limits<double>::infinity();

    search(root_, q, k, best, tau, evals);

    NeighborResult out;
    out.distance_evaluations = evals;
    out.ids.resize(best.size());
    out.distances.resize(best.size());
    for (std::size_t t = best.size(); t-- > 0;) {
      out.distances[t] = best.top().first;
      out.ids[t] = best.top().second;
      best.pop();
    }
    return out;
  }

 private:
  std::int32_t build(std::uint32_t* items, std::size_t count, Rng& rng) {
    if (count == 0) return -1;
    Node node;
    if (count == 1) {
      node.item = items[0];
      nodes_.push_back(node);
      return static_cast<std::int32_t>(nodes_.size() - 1);
    }

    // pick the candidate whose distances to a probe sample have the lowest
    // variance
    const std::size_t n_cand = std::min<std::size_t>(count, 8);
    const std::size_t n_probe = std::min<std::size_t>(count, 24);
    std::size_t best_cand = 0;
    double best_var = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n_cand; ++c) {
      std::size_t cand = static_cast<std::size_t>(rng.next_below(count));
      double mean = 0.0, m2 = 0.0;
      for (std::size_t p = 0; p < n_probe; ++p) {
        std::size_t probe = static_cast<std::size_t>(rng.next_below(count));
        double d = metric_(points_[items[cand]], points_[items[probe]]);
        ++build_evals_;
        double delta = d - mean;
        mean += delta / static_cast<double>(p + 1);
        m2 += delta * (d - mean);
      }
      if (m2 < best_var) {
        best_var = m2;
        best_cand = cand;
      }
    }
    std::swap(items[0], items[best_cand]);
    node.item = items[0];

    std::uint32_t* rest = items + 1;
    const std::size_t rest_n = count - 1;
    std::vector<double> dist(rest_n);
    for (std::size_t i = 0; i < rest_n; ++i) {
      dist[i] = metric_(points_[node.item], points_[rest[i]]);
      ++build_evals_;
    }
    // median split: inner half gets the smaller distances
    std::vector<std::size_t> order(rest_n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t half = (rest_n - 1) / 2;
    std::nth_element(order.begin(), order.begin() + half, order.end(),
                     [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
    node.radius = dist[order[half]];

    std::vector<std::uint32_t> inner_items, outer_items;
    inner_items.reserve(half + 1);
    outer_items.reserve(rest_n - half);
    for (std::size_t i = 0; i < rest_n; ++i)
      (dist[i] <= node.radius ? inner_items : outer_items).push_back(rest[i]);

    // Guard against all-equal distances putting everything inside: the split
    // must shrink, or recursion will not terminate.
    if (outer_items.empty() && inner_items.size() == rest_n && rest_n > 0) {
      node.radius = std::nextafter(node.radius, -1.0);
      inner_items.clear();
      for (std::size_t i = 0; i < rest_n; ++i)
        (dist[i] <= node.radius ? inner_items : outer_items).push_back(rest[i]);
    }

    nodes_.push_back(node);
    std::int32_t id = static_cast<std::int32_t>(nodes_.size() - 1);
    std::int32_t inner = build(inner_items.data(), inner_items.size(), rng);
    std::int32_t outer = build(outer_items.data(), outer_items.size(), rng);
    nodes_[id].inner = inner;
    nodes_[id].outer = outer;
    return id;
  }

  void search(std::int32_t id, const Point& q, std::size_t k,
              std::priority_queue<std::pair<double, std::size_t>>& best, double& tau,
              std::size_t& evals) const {
    if (id < 0) return;
    const Node& node = nodes_[id];
    double d = metric_(q, points_[node.item]);
    ++evals;
    if (best.size() < k) {
      best.push({d, node.item});
      if (best.size() == k) tau = best.top().first;
    } else if (d < tau || (d == tau && node.item < best.top().second)) {
      best.pop();
      best.push({d, node.item});
      tau = best.top().first;
    }
    if (node.inner < 0 && node.outer < 0) return;

    if (d <= node.radius) {
      if (d - tau <= node.radius) search(node.inner, q, k, best, tau, evals);
      if (d + tau >= node.radius) search(node.outer, q, k, best, tau, evals);
    } else {
      if (d + tau >= node.radius) search(node.outer, q, k, best, tau, evals);
      if (d - tau <= node.radius) search(node.inner, q, k, best, tau, evals);
    }
  }

  std::vector<Point> points_;
  Metric metric_;
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
  std::size_t build_evals_ = 0;
};

}  // namespace bwmd
