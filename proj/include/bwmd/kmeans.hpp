#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "bwmd/embedding.hpp"
#include "bwmd/errors.hpp"
#include "bwmd/parallel.hpp"
#include "bwmd/rand.hpp"

namespace bwmd {

struct KmeansOptions {
  std::size_t max_iterations = 500;
  unsigned threads = 1;
};

struct KmeansResult {
  std::vector<std::uint32_t> labels;
  std::uint32_t cluster_count = 0;
  double inertia = 0.0;
  std::size_t iterations = 0;                // assignment passes performed
  std::vector<double> inertia_history;       // one entry per assignment pass
  bool converged = false;
};

namespace detail {

inline double sparse_sq_dist(const BwmdEmbedding& a, const BwmdEmbedding& b) {
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.entries.size() && j < b.entries.size()) {
    std::uint32_t ia = a.entries[i].index, ib = b.entries[j].index;
    if (ia == ib) {
      double d = a.entries[i].weight - b.entries[j].weight;
      sum += d * d;
      ++i, ++j;
    } else if (ia < ib) {
      sum += a.entries[i].weight * a.entries[i].weight;
      ++i;
    } else {
      sum += b.entries[j].weight * b.entries[j].weight;
      ++j;
    }
  }
  for (; i < a.entries.size(); ++i) sum += a.entries[i].weight * a.entries[i].weight;
  for (; j < b.entries.size(); ++j) sum += b.entries[j].weight * b.entries[j].weight;
  return sum;
}

}  // namespace detail

/// k-means++ seeding: first seed uniform, every further seed drawn with
/// probability proportional to squared distance from the nearest seed so far.
/// If all remaining mass is zero (duplicate points), fall back to the lowest
/// unchosen index. Returns point indices.
inline std::vector<std::size_t> kmeans_pp_seeds(std::span<const BwmdEmbedding> points,
                                                std::uint32_t k, Rng& rng) {
  const std::size_t n = points.size();
  if (n == 0 || k == 0 || k > n) throw ConfigError("kmeans_pp_seeds: k must be in [1, n]");
  std::vector<std::size_t> seeds;
  seeds.reserve(k);
  std::vector<char> chosen(n, 0);
  std::size_t first = static_cast<std::size_t>(rng.next_below(n));
  seeds.push_back(first);
  chosen[first] = 1;

  std::vector<double> min_d2(n);
  for (std::size_t i = 0; i < n; ++i)
    min_d2[i] = detail::sparse_sq_dist(points[i], points[first]);

  while (seeds.size() < k) {
    double total = 0.0;
    for (double v : min_d2) total += v;
    std::size_t pick = n;
    if (total > 0.0) {
      double r = rng.next_unit() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (min_d2[i] <= 0.0) continue;
        acc += min_d2[i];
        if (acc > r) {
          pick = i;
          break;
        }
      }
      if (pick == n) {  // r landed on the top edge of the last positive slot
        for (std::size_t i = n; i-- > 0;)
          if (min_d2[i] > 0.0) {
            pick = i;
            break;
          }
      }
    } else {
      for (std::size_t i = 0; i < n; ++i)
        if (!chosen[i]) {
          pick = i;
          break;
        }
    }
    seeds.push_back(pick);
    chosen[pick] = 1;
    for (std::size_t i = 0; i < n; ++i)
      min_d2[i] = std::min(min_d2[i], detail::sparse_sq_dist(points[i], points[pick]));
  }
  return seeds;
}

/// Lloyd-style k-means over sparse embeddings with Hamerly's accelerated
/// assignment step: per-point upper/lower distance bounds plus half the
/// nearest-other-centroid distance let most points skip the full scan once
/// clusters stabilize. Assignments are identical to the plain algorithm;
/// bound tests use strict inequalities so distance ties resolve through a
/// full scan to the lowest centroid index, the same rule the full scan uses.
///
/// Centroids are dense (points live in an alphabet_size^2 space), points stay
/// sparse. Convergence means an assignment pass with no label changes.
/// Clusters that empty out are repaired by donating the point farthest from
/// its own centroid, skipping donors that would empty their source cluster.
inline KmeansResult kmeans(std::span<const BwmdEmbedding> points, std::uint32_t k,
                           std::uint64_t seed, const KmeansOptions& opts = {}) {
  const std::size_t n = points.size();
  if (n == 0) throw ConfigError("kmeans: empty point set");
  if (k == 0 || k > n) throw ConfigError("kmeans: k must be in [1, n]");
  const std::uint32_t sigma = points[0].alphabet_size;
  for (const auto& p : points)
    if (p.alphabet_size != sigma) throw ConfigError("kmeans: mixed alphabets in point set");
  const std::uint64_t dim64 = static_cast<std::uint64_t>(sigma) * sigma;
  if (dim64 > (1ull << 21))
    throw ConfigError("kmeans: alphabet too large for dense centroids");
  const std::size_t d = static_cast<std::size_t>(dim64);

  constexpr double kInf = std::numeric_limits<double>::infinity();

  Rng rng(seed);
  std::vector<std::size_t> seeds = kmeans_pp_seeds(points, k, rng);

  std::vector<double> centroids(static_cast<std::size_t>(k) * d, 0.0);
  std::vector<double> next_centroids(static_cast<std::size_t>(k) * d, 0.0);
  std::vector<double> c_sqnorm(k, 0.0);
  for (std::uint32_t j = 0; j < k; ++j) {
    double* c = centroids.data() + static_cast<std::size_t>(j) * d;
    for (const auto& e : points[seeds[j]].entries) c[e.index] = e.weight;
  }

  std::vector<double> x_sqnorm(n);
  for (std::size_t i = 0; i < n; ++i) x_sqnorm[i] = points[i].squared_norm();

  auto refresh_c_sqnorm = [&](const std::vector<double>& cs) {
    for (std::uint32_t j = 0; j < k; ++j) {
      const double* c = cs.data() + static_cast<std::size_t>(j) * d;
      double s = 0.0;
      for (std::size_t t = 0; t < d; ++t) s += c[t] * c[t];
      c_sqnorm[j] = s;
    }
  };
  refresh_c_sqnorm(centroids);

  auto dist_to_centroid = [&](std::size_t i, std::uint32_t j) {
    const double* c = centroids.data() + static_cast<std::size_t>(j) * d;
    double dot = 0.0;
    for (const auto& e : points[i].entries) dot += e.weight * c[e.index];
    double d2 = x_sqnorm[i] - 2.0 * dot + c_sqnorm[j];
    return std::sqrt(d2 > 0.0 ? d2 : 0.0);
  };

  std::vector<std::uint32_t> labels(n, 0);
  std::vector<double> upper(n, kInf), lower(n, 0.0);
  std::vector<double> s_half(k, kInf);
  bool force_full = true;

  // Half the distance from each centroid to its nearest peer, computed on
  // sparse views of the centroid rows so large-alphabet runs stay cheap.
  std::vector<std::vector<BwmdEmbedding::Entry>> c_sparse(k);
  auto refresh_s_half = [&]() {
    if (k == 1) {
      s_half[0] = kInf;
      return;
    }
    for (std::uint32_t j = 0; j < k; ++j) {
      c_sparse[j].clear();
      const double* c = centroids.data() + static_cast<std::size_t>(j) * d;
      for (std::size_t t = 0; t < d; ++t)
        if (c[t] != 0.0) c_sparse[j].push_back({static_cast<std::uint32_t>(t), c[t]});
    }
    std::fill(s_half.begin(), s_half.end(), kInf);
    for (std::uint32_t a = 0; a < k; ++a) {
      for (std::uint32_t b = a + 1; b < k; ++b) {
        const auto& ea = c_sparse[a];
        const auto& eb = c_sparse[b];
        double dot = 0.0;
        std::size_t i = 0, j = 0;
        while (i < ea.size() && j < eb.size()) {
          if (ea[i].index == eb[j].index) {
            dot += ea[i].weight * eb[j].weight;
            ++i, ++j;
          } else if (ea[i].index < eb[j].index) {
            ++i;
          } else {
            ++j;
          }
        }
        double d2 = c_sqnorm[a] - 2.0 * dot + c_sqnorm[b];
        double dist = std::sqrt(d2 > 0.0 ? d2 : 0.0);
        s_half[a] = std::min(s_half[a], dist);
        s_half[b] = std::min(s_half[b], dist);
      }
    }
    for (std::uint32_t j = 0; j < k; ++j)
      if (s_half[j] < kInf) s_half[j] *= 0.5;
  };

  KmeansResult res;
  res.cluster_count = k;

  std::vector<std::uint32_t> prev_labels(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<std::size_t> counts(k, 0);

  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    refresh_s_half();
    const bool full_pass = force_full;

    parallel_for(n, opts.threads, [&](std::size_t i) {
      std::uint32_t a = labels[i];
      upper[i] = dist_to_centroid(i, a);  // tighten unconditionally: exact inertia per pass
      double guard = std::max(s_half[a] == kInf ? 0.0 : s_half[a], lower[i]);
      if (!full_pass && k > 1 && upper[i] < guard) return;

      double best = kInf, second = kInf;
      std::uint32_t arg = 0;
      for (std::uint32_t j = 0; j < k; ++j) {
        double dist = dist_to_centroid(i, j);
        if (dist < best) {
          second = best;
          best = dist;
          arg = j;
        } else if (dist < second) {
          second = dist;
        }
      }
      labels[i] = arg;
      upper[i] = best;
      lower[i] = second;
    });
    force_full = false;
    ++res.iterations;

    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) inertia += upper[i] * upper[i];
    res.inertia_history.push_back(inertia);
    res.inertia = inertia;

    if (labels == prev_labels) {
      res.converged = true;
      break;
    }
    prev_labels = labels;

    // update phase
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < n; ++i) ++counts[labels[i]];
    for (std::uint32_t e = 0; e < k; ++e) {
      if (counts[e] != 0) continue;
      // farthest point whose departure leaves its cluster non-empty
      std::size_t donor = n;
      double worst = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[labels[i]] < 2) continue;
        if (upper[i] > worst) {
          worst = upper[i];
          donor = i;
        }
      }
      if (donor == n) throw ConfigError("kmeans: cannot repair empty cluster");
      --counts[labels[donor]];
      labels[donor] = e;
      counts[e] = 1;
      force_full = true;  // bounds are stale for the affected clusters
    }

    std::fill(next_centroids.begin(), next_centroids.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double* c = next_centroids.data() + static_cast<std::size_t>(labels[i]) * d;
      for (const auto& e : points[i].entries) c[e.index] += e.weight;
    }
    for (std::uint32_t j = 0; j < k; ++j) {
      double inv = 1.0 / static_cast<double>(counts[j]);
      double* c = next_centroids.data() + static_cast<std::size_t>(j) * d;
      for (std::size_t t = 0; t < d; ++t) c[t] *= inv;
    }

    // centroid motion -> bound adjustments
    std::vector<double> delta(k, 0.0);
    for (std::uint32_t j = 0; j < k; ++j) {
      const double* co = centroids.data() + static_cast<std::size_t>(j) * d;
      const double* cn = next_centroids.data() + static_cast<std::size_t>(j) * d;
      double s = 0.0;
      for (std::size_t t = 0; t < d; ++t) {
        double dd = cn[t] - co[t];
        s += dd * dd;
      }
      delta[j] = std::sqrt(s);
    }
    double dmax1 = 0.0, dmax2 = 0.0;
    std::uint32_t dargmax = 0;
    for (std::uint32_t j = 0; j < k; ++j) {
      if (delta[j] > dmax1) {
        dmax2 = dmax1;
        dmax1 = delta[j];
        dargmax = j;
      } else if (delta[j] > dmax2) {
        dmax2 = delta[j];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      upper[i] += delta[labels[i]];
      lower[i] -= labels[i] == dargmax ? dmax2 : dmax1;
      if (lower[i] < 0.0) lower[i] = 0.0;
    }

    centroids.swap(next_centroids);
    refresh_c_sqnorm(centroids);
  }

  res.labels = std::move(labels);
  return res;
}

}  // namespace bwmd
