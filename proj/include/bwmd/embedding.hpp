#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "bwmd/bwt.hpp"
#include "bwmd/errors.hpp"
#include "bwmd/sequence.hpp"

namespace bwmd {

/// Sparse embedding of a sequence: square-rooted, 1/sqrt(2)-scaled transition
/// frequencies of its BWT, indexed by cur + prev * alphabet_size in the
/// flattened alphabet_size^2 space. Entries are sorted by index and all
/// weights are positive, so sum of squares is 1/2 exactly up to rounding.
struct BwmdEmbedding {
  struct Entry {
    std::uint32_t index;
    double weight;
  };

  std::vector<Entry> entries;
  std::uint32_t alphabet_size = 0;
  std::uint64_t source_length = 0;

  std::uint64_t dimension() const {
    return static_cast<std::uint64_t>(alphabet_size) * alphabet_size;
  }

  double squared_norm() const {
    double s = 0.0;
    for (const Entry& e : entries) s += e.weight * e.weight;
    return s;
  }
};

/// Embed a sequence: BWT, count adjacent token pairs skipping any pair that
/// touches the sentinel, normalize by the number of counted pairs, then take
/// sqrt(freq) / sqrt(2) per cell. Needs at least one sentinel-free pair, so
/// the sequence must have length >= 2 (a length-2 input whose BWT splits the
/// two tokens around the sentinel still fails and is reported as degenerate).
inline BwmdEmbedding embed(const Sequence& seq) {
  if (seq.size() < 2)
    throw DegenerateInputError("embed: sequence '" + seq.id + "' is shorter than 2 tokens");
  BwtOutput b = bwt(seq);
  const std::uint32_t sigma = b.alphabet_size;

  // Dense counting buffer when the transition table is small, hashing only
  // for very large alphabets.
  const std::uint64_t dim = static_cast<std::uint64_t>(sigma) * sigma;
  std::uint64_t counted = 0;

  BwmdEmbedding emb;
  emb.alphabet_size = sigma;
  emb.source_length = seq.size();

  auto flat = [sigma](std::uint32_t prev, std::uint32_t cur) { return cur + prev * sigma; };

  if (dim <= (1u << 20)) {
    std::vector<std::uint32_t> counts(dim, 0);
    for (std::size_t i = 1; i < b.size(); ++i) {
      if (b.is_sentinel(i - 1) || b.is_sentinel(i)) continue;
      ++counts[flat(b.tokens[i - 1], b.tokens[i])];
      ++counted;
    }
    if (counted == 0)
      throw DegenerateInputError("embed: sequence '" + seq.id + "' has no sentinel-free transitions");
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
      if (counts[idx] == 0) continue;
      double freq = static_cast<double>(counts[idx]) / static_cast<double>(counted);
      emb.entries.push_back({static_cast<std::uint32_t>(idx), std::sqrt(freq) / std::sqrt(2.0)});
    }
  } else {
    std::unordered_map<std::uint64_t, std::uint32_t> counts;
    for (std::size_t i = 1; i < b.size(); ++i) {
      if (b.is_sentinel(i - 1) || b.is_sentinel(i)) continue;
      ++counts[flat(b.tokens[i - 1], b.tokens[i])];
      ++counted;
    }
    if (counted == 0)
      throw DegenerateInputError("embed: sequence '" + seq.id + "' has no sentinel-free transitions");
    emb.entries.reserve(counts.size());
    for (const auto& [idx, c] : counts) {
      double freq = static_cast<double>(c) / static_cast<double>(counted);
      emb.entries.push_back({static_cast<std::uint32_t>(idx), std::sqrt(freq) / std::sqrt(2.0)});
    }
    std::sort(emb.entries.begin(), emb.entries.end(),
              [](const BwmdEmbedding::Entry& a, const BwmdEmbedding::Entry& b_) { return a.index < b_.index; });
  }
  return emb;
}

/// Euclidean distance between two sparse embeddings (a sorted merge walk).
inline double bwmd_distance(const BwmdEmbedding& a, const BwmdEmbedding& b) {
  if (a.alphabet_size != b.alphabet_size)
    throw ConfigError("bwmd_distance: alphabet mismatch (" + std::to_string(a.alphabet_size) +
                      " vs " + std::to_string(b.alphabet_size) + ")");
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() && j < b.entries.size()) {
    const auto& ea = a.entries[i];
    const auto& eb = b.entries[j];
    if (ea.index == eb.index) {
      double d = ea.weight - eb.weight;
      sum += d * d;
      ++i, ++j;
    } else if (ea.index < eb.index) {
      sum += ea.weight * ea.weight;
      ++i;
    } else {
      sum += eb.weight * eb.weight;
      ++j;
    }
  }
  for (; i < a.entries.size(); ++i) sum += a.entries[i].weight * a.entries[i].weight;
  for (; j < b.entries.size(); ++j) sum += b.entries[j].weight * b.entries[j].weight;
  return std::sqrt(sum);
}

inline double bwmd_distance(const Sequence& u, const Sequence& v) {
  return bwmd_distance(embed(u), embed(v));
}

/// Hellinger distance between two dense discrete distributions:
/// (1/sqrt(2)) * || sqrt(p) - sqrt(q) ||_2.
inline double hellinger(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw ConfigError("hellinger: dimension mismatch");
  if (p.empty()) throw ConfigError("hellinger: empty distributions");
  double sp = 0.0, sq = 0.0;
  for (double x : p) {
    if (x < 0.0) throw ConfigError("hellinger: negative probability");
    sp += x;
  }
  for (double x : q) {
    if (x < 0.0) throw ConfigError("hellinger: negative probability");
    sq += x;
  }
  if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9)
    throw ConfigError("hellinger: inputs must sum to 1");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    sum += d * d;
  }
  return std::sqrt(sum) / std::sqrt(2.0);
}

}  // namespace bwmd
