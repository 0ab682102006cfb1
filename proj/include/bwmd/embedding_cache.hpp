#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "bwmd/embedding.hpp"
#include "bwmd/errors.hpp"

namespace bwmd {

namespace detail {

// Little-endian primitive IO, independent of host byte order.
inline void put_bytes(std::ostream& out, std::uint64_t v, int n) {
  char buf[8];
  for (int i = 0; i < n; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, n);
}

inline std::uint64_t get_bytes(std::istream& in, int n) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), n);
  if (!in) throw IoError("embedding cache: unexpected end of file");
  std::uint64_t v = 0;
  for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

inline void put_u16(std::ostream& o, std::uint16_t v) { put_bytes(o, v, 2); }
inline void put_u32(std::ostream& o, std::uint32_t v) { put_bytes(o, v, 4); }
inline void put_u64(std::ostream& o, std::uint64_t v) { put_bytes(o, v, 8); }
inline void put_f64(std::ostream& o, double v) { put_bytes(o, std::bit_cast<std::uint64_t>(v), 8); }
inline std::uint16_t get_u16(std::istream& i) { return static_cast<std::uint16_t>(get_bytes(i, 2)); }
inline std::uint32_t get_u32(std::istream& i) { return static_cast<std::uint32_t>(get_bytes(i, 4)); }
inline std::uint64_t get_u64(std::istream& i) { return get_bytes(i, 8); }
inline double get_f64(std::istream& i) { return std::bit_cast<double>(get_bytes(i, 8)); }

constexpr char kRecordMagic[4] = {'B', 'W', 'M', 'D'};
constexpr std::uint16_t kRecordVersion = 1;

}  // namespace detail

/// Serialize one embedding record: "BWMD" magic, u16 version, u32 alphabet
/// size, u32 entry count, then (u32 index, f64 weight) pairs. All values
/// little-endian.
inline void write_embedding_record(std::ostream& out, const BwmdEmbedding& emb) {
  out.write(detail::kRecordMagic, 4);
  detail::put_u16(out, detail::kRecordVersion);
  detail::put_u32(out, emb.alphabet_size);
  detail::put_u32(out, static_cast<std::uint32_t>(emb.entries.size()));
  for (const auto& e : emb.entries) {
    detail::put_u32(out, e.index);
    detail::put_f64(out, e.weight);
  }
  if (!out) throw IoError("embedding cache: write failure");
}

inline BwmdEmbedding read_embedding_record(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, detail::kRecordMagic, 4) != 0)
    throw IoError("embedding cache: bad record magic");
  std::uint16_t version = detail::get_u16(in);
  if (version != detail::kRecordVersion)
    throw IoError("embedding cache: unsupported record version " + std::to_string(version));
  BwmdEmbedding emb;
  emb.alphabet_size = detail::get_u32(in);
  std::uint32_t count = detail::get_u32(in);
  emb.entries.resize(count);
  for (std::uint32_t t = 0; t < count; ++t) {
    emb.entries[t].index = detail::get_u32(in);
    emb.entries[t].weight = detail::get_f64(in);
  }
  return emb;
}

/// On-disk embedding store: a flat record file plus a JSON manifest mapping
/// sequence ids to byte offsets, so single records can be fetched without
/// scanning.
struct EmbeddingCache {
  std::vector<std::string> ids;
  std::vector<BwmdEmbedding> embeddings;
};

inline void write_embedding_cache(const std::filesystem::path& cache_path,
                                  const std::filesystem::path& manifest_path,
                                  std::span<const std::string> ids,
                                  std::span<const BwmdEmbedding> embeddings) {
  if (ids.size() != embeddings.size())
    throw ConfigError("write_embedding_cache: ids/embeddings size mismatch");
  std::ofstream out(cache_path, std::ios::binary);
  if (!out) throw IoError("cannot write embedding cache: " + cache_path.string());

  nlohmann::ordered_json j;
  j["format"] = "bwmd-embedding-cache";
  j["version"] = 1;
  j["cache_file"] = cache_path.filename().string();
  j["count"] = ids.size();
  if (!embeddings.empty()) {
    j["alphabet_size"] = embeddings[0].alphabet_size;
    j["dimension"] = embeddings[0].dimension();
  }
  auto seqs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    nlohmann::ordered_json rec;
    rec["id"] = ids[i];
    rec["offset"] = static_cast<std::uint64_t>(out.tellp());
    rec["alphabet_size"] = embeddings[i].alphabet_size;
    rec["source_length"] = embeddings[i].source_length;
    rec["entry_count"] = embeddings[i].entries.size();
    write_embedding_record(out, embeddings[i]);
    seqs.push_back(std::move(rec));
  }
  j["sequences"] = std::move(seqs);
  out.close();
  if (!out) throw IoError("write failure: " + cache_path.string());

  std::ofstream mout(manifest_path);
  if (!mout) throw IoError("cannot write cache manifest: " + manifest_path.string());
  mout << j.dump(2) << '\n';
  if (!mout) throw IoError("write failure: " + manifest_path.string());
}

/// Load a whole cache back. The cache file is looked up next to the
/// manifest under the recorded filename.
inline EmbeddingCache read_embedding_cache(const std::filesystem::path& manifest_path) {
  std::ifstream min(manifest_path);
  if (!min) throw IoError("cannot open cache manifest: " + manifest_path.string());
  nlohmann::json j;
  try {
    min >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cache manifest parse error: " + std::string(e.what()));
  }
  if (j.value("format", "") != "bwmd-embedding-cache")
    throw IoError("not an embedding cache manifest: " + manifest_path.string());
  if (j.value("version", 0) != 1)
    throw IoError("unsupported cache version in " + manifest_path.string());

  std::filesystem::path cache_path =
      manifest_path.parent_path() / j.at("cache_file").get<std::string>();
  std::ifstream in(cache_path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding cache: " + cache_path.string());

  EmbeddingCache out;
  for (const auto& rec : j.at("sequences")) {
    std::uint64_t offset = rec.at("offset");
    in.seekg(static_cast<std::streamoff>(offset));
    if (!in) throw IoError("bad offset in cache manifest: " + manifest_path.string());
    BwmdEmbedding emb = read_embedding_record(in);
    if (rec.contains("source_length")) emb.source_length = rec.at("source_length");
    out.ids.push_back(rec.at("id").get<std::string>());
    out.embeddings.push_back(std::move(emb));
  }
  return out;
}

/// Fetch a single record by id without reading the rest of the cache.
inline BwmdEmbedding read_embedding_at(const std::filesystem::path& manifest_path,
                                       const std::string& id) {
  std::ifstream min(manifest_path);
  if (!min) throw IoError("cannot open cache manifest: " + manifest_path.string());
  nlohmann::json j;
  try {
    min >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cache manifest parse error: " + std::string(e.what()));
  }
  std::filesystem::path cache_path =
      manifest_path.parent_path() / j.at("cache_file").get<std::string>();
  for (const auto& rec : j.at("sequences")) {
    if (rec.at("id").get<std::string>() != id) continue;
    std::ifstream in(cache_path, std::ios::binary);
    if (!in) throw IoError("cannot open embedding cache: " + cache_path.string());
    in.seekg(static_cast<std::streamoff>(rec.at("offset").get<std::uint64_t>()));
    BwmdEmbedding emb = read_embedding_record(in);
    if (rec.contains("source_length")) emb.source_length = rec.at("source_length");
    return emb;
  }
  throw IoError("id '" + id + "' not present in cache manifest " + manifest_path.string());
}

}  // namespace bwmd
