#pragma once

#include "bwmd/embedding.hpp"
#include "bwmd/lzjd.hpp"

namespace bwmd {

/// Callable metric wrappers for the index templates.
struct BwmdMetric {
  double operator()(const BwmdEmbedding& a, const BwmdEmbedding& b) const {
    return bwmd_distance(a, b);
  }
};

struct LzjdMetric {
  double operator()(const LzSet& a, const LzSet& b) const { return lzjd_distance(a, b); }
};

}  // namespace bwmd
