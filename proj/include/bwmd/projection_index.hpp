#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "bwmd/embedding.hpp"
#include "bwmd/errors.hpp"
#include "bwmd/knn.hpp"
#include "bwmd/rand.hpp"

namespace bwmd {

/// Approximate nearest neighbors for embeddings by random one-dimensional
/// projections: m seeded unit directions, one sorted list of projected values
/// each. A query walks outward from its own projected position in every list,
/// pools candidate_multiplier * k candidates per direction, and re-ranks the
/// pooled set with exact distances. With enough candidates per direction the
/// pool covers the whole corpus and results equal brute force.
class ProjectionIndex {
 public:
  ProjectionIndex(std::vector<BwmdEmbedding> points, std::size_t m, std::uint64_t seed)
      : points_(std::move(points)), m_(m), seed_(seed) {
    if (points_.empty()) throw ConfigError("ProjectionIndex: empty point set");
    if (m_ == 0) throw ConfigError("ProjectionIndex: need at least one direction");
    sigma_ = points_[0].alphabet_size;
    for (const auto& p : points_)
      if (p.alphabet_size != sigma_)
        throw ConfigError("ProjectionIndex: mixed alphabets in point set");
    const std::uint64_t dim64 = static_cast<std::uint64_t>(sigma_) * sigma_;
    if (dim64 > (1ull << 21))
      throw ConfigError("ProjectionIndex: alphabet too large for dense directions");
    dim_ = static_cast<std::size_t>(dim64);
    build();
  }

  std::size_t size() const { return points_.size(); }
  std::size_t direction_count() const { return m_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<BwmdEmbedding>& points() const { return points_; }

  NeighborResult query(const BwmdEmbedding& q, std::size_t k,
                       std::size_t candidate_multiplier = 16) const {
    if (k == 0) throw ConfigError("ProjectionIndex::query: k must be positive");
    if (candidate_multiplier == 0)
      throw ConfigError("ProjectionIndex::query: candidate multiplier must be positive");
    const std::size_t n = points_.size();
    const std::size_t per_direction = std::min(n, candidate_multiplier * k);

    std::vector<char> seen(n, 0);
    std::vector<std::size_t> pool;
    pool.reserve(per_direction * m_);
    for (std::size_t dir = 0; dir < m_; ++dir) {
      double qp = project(q, dir);
      const auto& list = sorted_[dir];
      // first element with value >= qp; expand to both sides from there
      std::size_t hi = static_cast<std::size_t>(
          std::lower_bound(list.begin(), list.end(), std::make_pair(qp, std::size_t{0})) -
          list.begin());
      std::size_t lo = hi;
      for (std::size_t taken = 0; taken < per_direction; ++taken) {
        bool take_hi;
        if (lo == 0)
          take_hi = true;
        else if (hi == n)
          take_hi = false;
        else
          take_hi = list[hi].first - qp < qp - list[lo - 1].first;
        std::size_t item = take_hi ? list[hi++].second : list[--lo].second;
        if (!seen[item]) {
          seen[item] = 1;
          pool.push_back(item);
        }
      }
    }

    NeighborResult out;
    std::vector<std::pair<double, std::size_t>> ranked(pool.size());
    for (std::size_t t = 0; t < pool.size(); ++t)
      ranked[t] = {bwmd_distance(q, points_[pool[t]]), pool[t]};
    out.distance_evaluations = ranked.size();
    std::size_t keep = std::min(k, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end());
    out.ids.reserve(keep);
    out.distances.reserve(keep);
    for (std::size_t t = 0; t < keep; ++t) {
      out.distances.push_back(ranked[t].first);
      out.ids.push_back(ranked[t].second);
    }
    return out;
  }

  double project(const BwmdEmbedding& p, std::size_t dir) const {
    const double* w = directions_.data() + dir * dim_;
    double dot = 0.0;
    for (const auto& e : p.entries) dot += e.weight * w[e.index];
    return dot;
  }

 private:
  void build() {
    directions_.assign(m_ * dim_, 0.0);
    for (std::size_t dir = 0; dir < m_; ++dir) {
      Rng rng(mix_seed(seed_, 0x70726f6aULL, dir));
      double* w = directions_.data() + dir * dim_;
      double norm2 = 0.0;
      for (std::size_t t = 0; t < dim_; ++t) {
        // Box-Muller, fixed sequence (no library distributions, which vary
        // across standard library implementations)
        double u1 = rng.next_unit();
        double u2 = rng.next_unit();
        while (u1 <= 0.0) u1 = rng.next_unit();
        double g = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
        w[t] = g;
        norm2 += g * g;
      }
      double inv = 1.0 / std::sqrt(norm2);
      for (std::size_t t = 0; t < dim_; ++t) w[t] *= inv;
    }

    sorted_.assign(m_, {});
    for (std::size_t dir = 0; dir < m_; ++dir) {
      auto& list = sorted_[dir];
      list.resize(points_.size());
      for (std::size_t i = 0; i < points_.size(); ++i) list[i] = {project(points_[i], dir), i};
      std::sort(list.begin(), list.end());
    }
  }

  std::vector<BwmdEmbedding> points_;
  std::size_t m_ = 0;
  std::uint64_t seed_ = 0;
  std::uint32_t sigma_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> directions_;                             // m_ x dim_
  std::vector<std::vector<std::pair<double, std::size_t>>> sorted_;  // per direction
};

}  // namespace bwmd
