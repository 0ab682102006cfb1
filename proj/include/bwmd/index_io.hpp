#pragma once

#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

#include "bwmd/embedding_cache.hpp"
#include "bwmd/errors.hpp"
#include "bwmd/lzjd.hpp"
#include "bwmd/projection_index.hpp"
#include "bwmd/vp_tree.hpp"

namespace bwmd {

namespace detail {

inline void write_point(std::ostream& out, const BwmdEmbedding& p) {
  write_embedding_record(out, p);
}

inline void read_point(std::istream& in, BwmdEmbedding& p) { p = read_embedding_record(in); }

inline void write_point(std::ostream& out, const LzSet& p) {
  put_u32(out, static_cast<std::uint32_t>(p.hashes.size()));
  for (std::uint64_t h : p.hashes) put_u64(out, h);
  put_bytes(out, p.sketch ? 1 : 0, 1);
  if (p.sketch) {
    put_u32(out, static_cast<std::uint32_t>(p.sketch->size()));
    for (std::uint64_t h : *p.sketch) put_u64(out, h);
  }
}

inline void read_point(std::istream& in, LzSet& p) {
  std::uint32_t n = get_u32(in);
  p.hashes.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) p.hashes[i] = get_u64(in);
  if (get_bytes(in, 1) != 0) {
    std::uint32_t m = get_u32(in);
    std::vector<std::uint64_t> sk(m);
    for (std::uint32_t i = 0; i < m; ++i) sk[i] = get_u64(in);
    p.sketch = std::move(sk);
  } else {
    p.sketch.reset();
  }
}

constexpr char kVpMagic[4] = {'B', 'W', 'V', 'P'};
constexpr char kProjMagic[4] = {'B', 'W', 'P', 'J'};

inline void check_magic(std::istream& in, const char (&magic)[4], const char* what) {
  char buf[4];
  in.read(buf, 4);
  if (!in || std::memcmp(buf, magic, 4) != 0)
    throw IoError(std::string(what) + ": bad file magic");
}

}  // namespace detail

/// Write a vantage-point tree: points, then the node array. The metric is
/// not stored; the loader supplies the same metric object again.
template <typename Point, typename Metric>
void save_vp_tree(const VpTree<Point, Metric>& tree, std::ostream& out) {
  out.write(detail::kVpMagic, 4);
  detail::put_u16(out, 1);
  detail::put_u64(out, tree.size());
  for (const Point& p : tree.points()) detail::write_point(out, p);
  detail::put_u64(out, tree.nodes().size());
  for (const auto& node : tree.nodes()) {
    detail::put_u32(out, node.item);
    detail::put_f64(out, node.radius);
    detail::put_u32(out, static_cast<std::uint32_t>(node.inner));
    detail::put_u32(out, static_cast<std::uint32_t>(node.outer));
  }
  detail::put_u32(out, static_cast<std::uint32_t>(tree.root()));
  detail::put_u64(out, tree.build_distance_evaluations());
  if (!out) throw IoError("vp tree: write failure");
}

template <typename Point, typename Metric>
VpTree<Point, Metric> load_vp_tree(std::istream& in, Metric metric) {
  detail::check_magic(in, detail::kVpMagic, "vp tree");
  std::uint16_t version = detail::get_u16(in);
  if (version != 1) throw IoError("vp tree: unsupported version " + std::to_string(version));
  std::uint64_t n = detail::get_u64(in);
  std::vector<Point> points(n);
  for (std::uint64_t i = 0; i < n; ++i) detail::read_point(in, points[i]);
  std::uint64_t node_count = detail::get_u64(in);
  std::vector<typename VpTree<Point, Metric>::Node> nodes(node_count);
  for (auto& node : nodes) {
    node.item = detail::get_u32(in);
    node.radius = detail::get_f64(in);
    node.inner = static_cast<std::int32_t>(detail::get_u32(in));
    node.outer = static_cast<std::int32_t>(detail::get_u32(in));
  }
  std::int32_t root = static_cast<std::int32_t>(detail::get_u32(in));
  std::uint64_t build_evals = detail::get_u64(in);
  return VpTree<Point, Metric>(std::move(points), std::move(metric), std::move(nodes), root,
                               build_evals);
}

/// Write a projection index: directions are not stored, only the seed and
/// shape, because the construction is deterministic and is replayed on load.
inline void save_projection_index(const ProjectionIndex& index, std::ostream& out) {
  out.write(detail::kProjMagic, 4);
  detail::put_u16(out, 1);
  detail::put_u64(out, index.direction_count());
  detail::put_u64(out, index.seed());
  detail::put_u64(out, index.size());
  for (const auto& p : index.points()) detail::write_point(out, p);
  if (!out) throw IoError("projection index: write failure");
}

inline ProjectionIndex load_projection_index(std::istream& in) {
  detail::check_magic(in, detail::kProjMagic, "projection index");
  std::uint16_t version = detail::get_u16(in);
  if (version != 1)
    throw IoError("projection index: unsupported version " + std::to_string(version));
  std::uint64_t m = detail::get_u64(in);
  std::uint64_t seed = detail::get_u64(in);
  std::uint64_t n = detail::get_u64(in);
  std::vector<BwmdEmbedding> points(n);
  for (std::uint64_t i = 0; i < n; ++i) detail::read_point(in, points[i]);
  return ProjectionIndex(std::move(points), static_cast<std::size_t>(m), seed);
}

template <typename Index>
void save_index_file(const Index& index, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write index file: " + path.string());
  if constexpr (std::is_same_v<Index, ProjectionIndex>)
    save_projection_index(index, out);
  else
    save_vp_tree(index, out);
  out.close();
  if (!out) throw IoError("write failure: " + path.string());
}

}  // namespace bwmd
