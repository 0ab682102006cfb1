#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bwmd/errors.hpp"

namespace bwmd {

/// One agglomeration step. `left` and `right` are node ids: leaves are
/// 0..n-1, internal nodes n..2n-2 in merge order, so `id` of the k-th merge
/// is n + k.
struct DendroMerge {
  std::size_t left;
  std::size_t right;
  double height;
  std::size_t id;
};

struct Dendrogram {
  std::size_t leaf_count = 0;
  std::vector<std::string> leaf_labels;
  std::vector<DendroMerge> merges;  // exactly leaf_count - 1 entries, heights non-decreasing
};

struct ClusterAssignment {
  std::vector<std::uint32_t> labels;  // one id per leaf, ids are 0..cluster_count-1
  std::uint32_t cluster_count = 0;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Cut the tree into k flat clusters by undoing the last k-1 merges.
/// Cluster ids are assigned by first appearance in leaf order.
inline ClusterAssignment cut_dendrogram(const Dendrogram& dendro, std::size_t k) {
  const std::size_t n = dendro.leaf_count;
  if (k == 0 || k > n)
    throw ConfigError("cut_dendrogram: k must be in [1, leaf_count]");
  if (dendro.merges.size() + 1 != n)
    throw ConfigError("cut_dendrogram: malformed dendrogram");

  detail::UnionFind uf(2 * n - 1);
  for (std::size_t m = 0; m + k < n; ++m) {
    const DendroMerge& mg = dendro.merges[m];
    uf.unite(mg.left, mg.id);
    uf.unite(mg.right, mg.id);
  }

  ClusterAssignment out;
  out.labels.resize(n);
  std::vector<std::int64_t> remap(2 * n - 1, -1);
  std::uint32_t next = 0;
  for (std::size_t leaf = 0; leaf < n; ++leaf) {
    std::size_t root = uf.find(leaf);
    if (remap[root] < 0) remap[root] = next++;
    out.labels[leaf] = static_cast<std::uint32_t>(remap[root]);
  }
  out.cluster_count = next;
  return out;
}

namespace detail {

inline std::string sanitize_label(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (c == '(' || c == ')' || c == ',' || c == ':' || c == ';' || c == '\'' || c == ' ')
      c = '_';
  return out;
}

}  // namespace detail

/// Newick serialization with branch lengths (parent height minus child
/// height; leaves sit at height zero).
inline std::string to_newick(const Dendrogram& dendro) {
  const std::size_t n = dendro.leaf_count;
  if (n == 0) throw ConfigError("to_newick: empty dendrogram");
  if (n == 1) return detail::sanitize_label(dendro.leaf_labels[0]) + ";";

  std::vector<double> height(2 * n - 1, 0.0);
  for (const DendroMerge& m : dendro.merges) height[m.id] = m.height;

  // children[id] for internal nodes
  std::vector<std::pair<std::size_t, std::size_t>> children(2 * n - 1, {0, 0});
  for (const DendroMerge& m : dendro.merges) children[m.id] = {m.left, m.right};

  std::ostringstream os;
  os.precision(12);
  // Iterative post-order build to keep deep chains off the call stack.
  struct Frame {
    std::size_t node;
    int stage;
  };
  std::vector<Frame> stack{{2 * n - 2, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.node < n) {
      os << detail::sanitize_label(dendro.leaf_labels[f.node]);
      stack.pop_back();
      continue;
    }
    auto [lc, rc] = children[f.node];
    if (f.stage == 0) {
      os << '(';
      f.stage = 1;
      stack.push_back({lc, 0});
    } else if (f.stage == 1) {
      os << ':' << height[f.node] - height[lc] << ',';
      f.stage = 2;
      stack.push_back({rc, 0});
    } else {
      os << ':' << height[f.node] - height[rc] << ')';
      stack.pop_back();
    }
  }
  os << ';';
  return os.str();
}

/// Graphviz rendering: leaves as boxes, internal nodes annotated with merge
/// heights.
inline std::string to_dot(const Dendrogram& dendro) {
  const std::size_t n = dendro.leaf_count;
  if (n == 0) throw ConfigError("to_dot: empty dendrogram");
  std::ostringstream os;
  os.precision(12);
  os << "digraph dendrogram {\n  node [fontsize=10];\n";
  for (std::size_t i = 0; i < n; ++i)
    os << "  n" << i << " [shape=box, label=\"" << detail::sanitize_label(dendro.leaf_labels[i])
       << "\"];\n";
  for (const DendroMerge& m : dendro.merges) {
    os << "  n" << m.id << " [shape=ellipse, label=\"h=" << m.height << "\"];\n";
    os << "  n" << m.id << " -> n" << m.left << ";\n";
    os << "  n" << m.id << " -> n" << m.right << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace bwmd
