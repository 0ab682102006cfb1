#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>
#include <openssl/evp.h>

#include "bwmd/errors.hpp"
#include "bwmd/sequence.hpp"

namespace bwmd {

/// What to do with FASTA residues outside ACGT (N, IUPAC ambiguity codes,
/// stray characters).
enum class DnaAmbiguityPolicy { Drop, MapToA, Reject };

struct CorpusItem {
  Sequence seq;                       // seq.id is the item id
  std::optional<std::string> label;
  std::string source_path;
  std::string sha256;                 // of the raw source bytes for this item
  std::string kind;                   // "fasta" or "raw"
};

struct Corpus {
  Alphabet alphabet = Alphabet::Bytes256;
  std::vector<CorpusItem> items;

  std::size_t size() const { return items.size(); }

  std::vector<std::string> ids() const {
    std::vector<std::string> out;
    out.reserve(items.size());
    for (const auto& it : items) out.push_back(it.seq.id);
    return out;
  }
};

inline std::string sha256_hex(const void* data, std::size_t len) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int digest_len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data, len) != 1 || EVP_DigestFinal_ex(ctx, digest, &digest_len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw IoError("sha256: digest computation failed");
  }
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * digest_len);
  for (unsigned int i = 0; i < digest_len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

inline std::string sha256_hex(const std::string& s) { return sha256_hex(s.data(), s.size()); }

inline std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path.string());
  return std::move(buf).str();
}

namespace detail {

inline int dna_token(char c) {
  switch (c) {
    case 'A': case 'a': return 0;
    case 'C': case 'c': return 1;
    case 'G': case 'g': return 2;
    case 'T': case 't': return 3;
    default: return -1;
  }
}

}  // namespace detail

/// Parse a FASTA file over the 4-letter DNA alphabet. The full header text
/// after '>' (trimmed) becomes the item id; ids must be unique within a file.
/// Residues outside ACGT are handled per policy. Records with no residues at
/// all are kept as empty sequences; downstream stages reject them where they
/// cannot be processed.
inline Corpus load_fasta(const std::filesystem::path& path,
                         DnaAmbiguityPolicy policy = DnaAmbiguityPolicy::Drop) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open FASTA file: " + path.string());

  Corpus corpus;
  corpus.alphabet = Alphabet::Dna4;
  std::unordered_set<std::string> seen_ids;

  std::string line;
  bool have_record = false;
  Sequence cur;
  std::string raw_record;  // header + residue lines as read, for hashing

  auto flush = [&]() {
    if (!have_record) return;
    if (!seen_ids.insert(cur.id).second)
      throw IoError("duplicate FASTA id '" + cur.id + "' in " + path.string());
    CorpusItem item;
    item.seq = std::move(cur);
    item.source_path = path.string();
    item.sha256 = sha256_hex(raw_record);
    item.kind = "fasta";
    corpus.items.push_back(std::move(item));
    raw_record.clear();
  };

  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '>') {
      flush();
      have_record = true;
      cur = Sequence{};
      cur.alphabet_size = 4;
      std::string header = line.substr(1);
      // trim
      std::size_t b = header.find_first_not_of(" \t");
      std::size_t e = header.find_last_not_of(" \t");
      cur.id = b == std::string::npos ? "" : header.substr(b, e - b + 1);
      if (cur.id.empty())
        throw IoError("empty FASTA header at " + path.string() + ":" + std::to_string(lineno));
      raw_record = line;
      raw_record.push_back('\n');
      continue;
    }
    if (!have_record)
      throw IoError("residue data before any FASTA header at " + path.string() + ":" +
                    std::to_string(lineno));
    raw_record += line;
    raw_record.push_back('\n');
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      int t = detail::dna_token(c);
      if (t >= 0) {
        cur.tokens.push_back(static_cast<std::uint32_t>(t));
      } else if (policy == DnaAmbiguityPolicy::MapToA) {
        cur.tokens.push_back(0);
      } else if (policy == DnaAmbiguityPolicy::Reject) {
        throw IoError(std::string("non-ACGT residue '") + c + "' at " + path.string() + ":" +
                      std::to_string(lineno));
      }
      // Drop: skip the residue
    }
  }
  if (in.bad()) throw IoError("read failure: " + path.string());
  flush();
  if (corpus.items.empty()) throw IoError("no FASTA records in " + path.string());
  return corpus;
}

/// Labels file: one "name,label" pair per line. A single optional header
/// line reading exactly "filename,label" (or "id,label") is skipped.
inline std::map<std::string, std::string> load_labels_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open labels file: " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && (line == "filename,label" || line == "id,label")) continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw IoError("malformed labels line (no comma) at " + path.string() + ":" +
                    std::to_string(lineno));
    std::string key = line.substr(0, comma);
    std::string value = line.substr(comma + 1);
    if (key.empty() || value.empty())
      throw IoError("malformed labels line at " + path.string() + ":" + std::to_string(lineno));
    if (!out.emplace(key, value).second)
      throw IoError("duplicate label entry '" + key + "' in " + path.string());
  }
  return out;
}

/// Load every regular file in a directory as one byte sequence each, in
/// lexicographic filename order. Filenames become item ids. When a labels
/// map is supplied each file picks up its label; with labels_required, files
/// without one are an error.
inline Corpus load_bytes_dir(const std::filesystem::path& dir,
                             const std::optional<std::filesystem::path>& labels_csv = std::nullopt,
                             bool labels_required = false) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    throw IoError("not a directory: " + dir.string());

  std::map<std::string, std::string> labels;
  if (labels_csv) labels = load_labels_csv(*labels_csv);

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  if (files.empty()) throw IoError("no regular files in " + dir.string());

  Corpus corpus;
  corpus.alphabet = Alphabet::Bytes256;
  for (const auto& f : files) {
    std::string bytes = read_file_bytes(f);
    std::string name = f.filename().string();
    CorpusItem item;
    item.seq = Sequence::from_bytes(name, bytes);
    item.source_path = f.string();
    item.sha256 = sha256_hex(bytes);
    item.kind = "raw";
    auto it = labels.find(name);
    if (it != labels.end())
      item.label = it->second;
    else if (labels_required)
      throw ConfigError("no label for file '" + name + "'");
    corpus.items.push_back(std::move(item));
  }
  return corpus;
}

/// JSON manifest snapshot of a corpus: ids, source paths, lengths, labels
/// and content hashes. Reloading re-reads the sources and verifies hashes.
inline void save_corpus_manifest(const Corpus& corpus, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["format"] = "bwmd-corpus";
  j["version"] = 1;
  j["alphabet"] = alphabet_name(corpus.alphabet);
  auto items = nlohmann::ordered_json::array();
  for (const auto& it : corpus.items) {
    nlohmann::ordered_json rec;
    rec["id"] = it.seq.id;
    rec["kind"] = it.kind;
    rec["path"] = it.source_path;
    rec["length"] = it.seq.size();
    rec["sha256"] = it.sha256;
    if (it.label)
      rec["label"] = *it.label;
    else
      rec["label"] = nullptr;
    items.push_back(std::move(rec));
  }
  j["items"] = std::move(items);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest: " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failure: " + path.string());
}

inline Corpus load_corpus_manifest(const std::filesystem::path& path,
                                   DnaAmbiguityPolicy policy = DnaAmbiguityPolicy::Drop) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("manifest parse error in " + path.string() + ": " + e.what());
  }
  if (j.value("format", "") != "bwmd-corpus")
    throw IoError("not a corpus manifest: " + path.string());
  if (j.value("version", 0) != 1)
    throw IoError("unsupported corpus manifest version in " + path.string());

  Corpus corpus;
  std::string alpha = j.value("alphabet", "");
  if (alpha == "dna")
    corpus.alphabet = Alphabet::Dna4;
  else if (alpha == "bytes")
    corpus.alphabet = Alphabet::Bytes256;
  else
    throw IoError("unknown alphabet '" + alpha + "' in " + path.string());

  // load FASTA sources once each, then pick records by id
  std::map<std::string, Corpus> fasta_cache;
  for (const auto& rec : j.at("items")) {
    std::string id = rec.at("id");
    std::string kind = rec.at("kind");
    std::string src = rec.at("path");
    std::string want_sha = rec.at("sha256");
    CorpusItem item;
    if (kind == "fasta") {
      auto [it, fresh] = fasta_cache.try_emplace(src);
      if (fresh) it->second = load_fasta(src, policy);
      const Corpus& file = it->second;
      auto found = std::find_if(file.items.begin(), file.items.end(),
                                [&](const CorpusItem& c) { return c.seq.id == id; });
      if (found == file.items.end())
        throw IoError("record '" + id + "' missing from " + src);
      item = *found;
    } else if (kind == "raw") {
      std::string bytes = read_file_bytes(src);
      item.seq = Sequence::from_bytes(id, bytes);
      item.source_path = src;
      item.sha256 = sha256_hex(bytes);
      item.kind = "raw";
    } else {
      throw IoError("unknown item kind '" + kind + "' in " + path.string());
    }
    if (item.sha256 != want_sha)
      throw IoError("content hash mismatch for '" + id + "': source " + src +
                    " changed since the manifest was written");
    if (!rec.at("label").is_null()) item.label = rec.at("label").get<std::string>();
    corpus.items.push_back(std::move(item));
  }
  return corpus;
}

}  // namespace bwmd
