#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bwmd/errors.hpp"

namespace bwmd {

enum class Alphabet { Dna4, Bytes256 };

constexpr std::uint32_t alphabet_size(Alphabet a) {
  return a == Alphabet::Dna4 ? 4u : 256u;
}

constexpr const char* alphabet_name(Alphabet a) {
  return a == Alphabet::Dna4 ? "dna" : "bytes";
}

/// A tokenized sequence. Tokens are dense ids in [0, alphabet_size); the
/// sentinel used by the transforms is *not* part of the sequence and is
/// represented downstream as the extra id alphabet_size.
struct Sequence {
  std::string id;
  std::vector<std::uint32_t> tokens;
  std::uint32_t alphabet_size = 0;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  void validate() const {
    if (alphabet_size == 0) throw ConfigError("sequence '" + id + "': alphabet_size must be positive");
    for (std::uint32_t t : tokens) {
      if (t >= alphabet_size)
        throw ConfigError("sequence '" + id + "': token " + std::to_string(t) +
                          " out of range for alphabet of size " + std::to_string(alphabet_size));
    }
  }

  static Sequence from_tokens(std::string id, std::vector<std::uint32_t> tokens, std::uint32_t sigma) {
    Sequence s;
    s.id = std::move(id);
    s.tokens = std::move(tokens);
    s.alphabet_size = sigma;
    s.validate();
    return s;
  }

  /// Interpret raw bytes as tokens over the 256-symbol alphabet.
  static Sequence from_bytes(std::string id, std::string_view bytes) {
    Sequence s;
    s.id = std::move(id);
    s.alphabet_size = 256;
    s.tokens.reserve(bytes.size());
    for (char c : bytes) s.tokens.push_back(static_cast<unsigned char>(c));
    return s;
  }

  /// ASCII text restricted to an alphabet of printable characters starting at
  /// 'a'. Convenient for tests and small demos.
  static Sequence from_ascii(std::string id, std::string_view text, std::uint32_t sigma = 26) {
    Sequence s;
    s.id = std::move(id);
    s.alphabet_size = sigma;
    s.tokens.reserve(text.size());
    for (char c : text) {
      if (c < 'a' || static_cast<std::uint32_t>(c - 'a') >= sigma)
        throw ConfigError("from_ascii: character '" + std::string(1, c) + "' outside alphabet");
      s.tokens.push_back(static_cast<std::uint32_t>(c - 'a'));
    }
    return s;
  }
};

}  // namespace bwmd
