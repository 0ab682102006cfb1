#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bwmd/errors.hpp"
#include "bwmd/parallel.hpp"

namespace bwmd {

/// Symmetric pairwise distance matrix in condensed form: only the strict
/// upper triangle is stored (n*(n-1)/2 doubles), the diagonal is implicitly
/// zero.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  explicit DistanceMatrix(std::vector<std::string> labels)
      : n_(labels.size()), labels_(std::move(labels)), condensed_(n_ * (n_ - 1) / 2, 0.0) {
    if (n_ == 0) throw ConfigError("DistanceMatrix: needs at least one item");
  }

  static DistanceMatrix with_size(std::size_t n) {
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    return DistanceMatrix(std::move(labels));
  }

  std::size_t size() const { return n_; }
  std::span<const std::string> labels() const { return labels_; }
  std::span<const double> condensed() const { return condensed_; }

  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    return condensed_[condensed_index(i, j)];
  }

  void set(std::size_t i, std::size_t j, double value) {
    if (i == j) {
      if (value != 0.0) throw ConfigError("DistanceMatrix: diagonal must stay zero");
      return;
    }
    if (!(value >= 0.0) || std::isnan(value))
      throw ConfigError("DistanceMatrix: distances must be finite and non-negative");
    condensed_[condensed_index(i, j)] = value;
  }

  /// Fill from a callable d(i, j), evaluated once per unordered pair.
  /// Rows are distributed over threads; d must be safe to call concurrently.
  template <typename Dist>
  static DistanceMatrix build(std::vector<std::string> labels, Dist&& d, unsigned threads = 1) {
    DistanceMatrix m(std::move(labels));
    const std::size_t n = m.n_;
    parallel_for(n, threads, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double v = d(i, j);
        if (!(v >= 0.0) || std::isnan(v))
          throw ConfigError("DistanceMatrix: distances must be finite and non-negative");
        m.condensed_[m.condensed_index(i, j)] = v;
      }
    });
    return m;
  }

  std::size_t condensed_index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    if (j >= n_ || i == j) throw ConfigError("DistanceMatrix: index out of range");
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> condensed_;
};

}  // namespace bwmd
