#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bwmd/errors.hpp"

namespace bwmd {

struct HcvScores {
  double homogeneity = 0.0;
  double completeness = 0.0;
  double v_measure = 0.0;
};

/// Map arbitrary string labels to dense ids, first appearance first.
inline std::vector<std::uint32_t> encode_labels(std::span<const std::string> labels) {
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<std::uint32_t> out;
  out.reserve(labels.size());
  for (const std::string& s : labels) {
    auto [it, fresh] = ids.emplace(s, static_cast<std::uint32_t>(ids.size()));
    (void)fresh;
    out.push_back(it->second);
  }
  return out;
}

/// Homogeneity, completeness and their harmonic mean (V-measure) from the
/// class/cluster contingency table, entropies in nats.
///   h = 1 - H(class|cluster) / H(class)   (h = 1 when H(class) = 0)
///   c = 1 - H(cluster|class) / H(cluster) (c = 1 when H(cluster) = 0)
///   v = 2hc / (h+c)                       (v = 0 when h + c = 0)
inline HcvScores homogeneity_completeness_v(std::span<const std::uint32_t> truth,
                                            std::span<const std::uint32_t> predicted) {
  if (truth.size() != predicted.size())
    throw ConfigError("homogeneity_completeness_v: label vectors differ in length");
  if (truth.empty()) throw ConfigError("homogeneity_completeness_v: empty labeling");
  const double n = static_cast<double>(truth.size());

  std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
  std::unordered_map<std::uint32_t, double> class_count, cluster_count;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    joint[{truth[i], predicted[i]}] += 1.0;
    class_count[truth[i]] += 1.0;
    cluster_count[predicted[i]] += 1.0;
  }

  auto entropy = [n](const std::unordered_map<std::uint32_t, double>& counts) {
    double h = 0.0;
    for (const auto& [id, c] : counts) h -= (c / n) * std::log(c / n);
    return h;
  };
  const double h_class = entropy(class_count);
  const double h_cluster = entropy(cluster_count);

  // conditional entropies from the joint table
  double h_class_given_cluster = 0.0, h_cluster_given_class = 0.0;
  for (const auto& [cell, cnt] : joint) {
    double p = cnt / n;
    h_class_given_cluster -= p * std::log(cnt / cluster_count[cell.second]);
    h_cluster_given_class -= p * std::log(cnt / class_count[cell.first]);
  }

  HcvScores s;
  s.homogeneity = h_class == 0.0 ? 1.0 : 1.0 - h_class_given_cluster / h_class;
  s.completeness = h_cluster == 0.0 ? 1.0 : 1.0 - h_cluster_given_class / h_cluster;
  double hc = s.homogeneity + s.completeness;
  s.v_measure = hc == 0.0 ? 0.0 : 2.0 * s.homogeneity * s.completeness / hc;
  return s;
}

/// Mean of per-class recall. Classes absent from the ground truth contribute
/// nothing (they cannot: every class id present appears in some item).
inline double balanced_accuracy(std::span<const std::uint32_t> truth,
                                std::span<const std::uint32_t> predicted) {
  if (truth.size() != predicted.size())
    throw ConfigError("balanced_accuracy: label vectors differ in length");
  if (truth.empty()) throw ConfigError("balanced_accuracy: empty labeling");
  std::unordered_map<std::uint32_t, std::pair<double, double>> per_class;  // hits, total
  for (std::uint32_t t : truth) per_class.emplace(t, std::make_pair(0.0, 0.0));
  for (std::uint32_t p : predicted)
    if (!per_class.count(p))
      throw ConfigError("balanced_accuracy: predicted class " + std::to_string(p) +
                        " absent from ground truth");
  for (std::size_t i = 0; i < truth.size(); ++i) {
    auto& [hits, total] = per_class[truth[i]];
    total += 1.0;
    if (predicted[i] == truth[i]) hits += 1.0;
  }
  double sum = 0.0;
  for (const auto& [id, ht] : per_class) sum += ht.first / ht.second;
  return sum / static_cast<double>(per_class.size());
}

/// Area under the ROC curve by the Mann-Whitney U statistic with average
/// ranks for tied scores, so ties contribute 1/2.
inline double auc_score(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) throw ConfigError("auc_score: size mismatch");
  if (scores.empty()) throw ConfigError("auc_score: empty input");
  std::size_t pos = 0;
  for (std::uint8_t l : labels) {
    if (l > 1) throw ConfigError("auc_score: labels must be 0 or 1");
    pos += l;
  }
  std::size_t neg = scores.size() - pos;
  if (pos == 0 || neg == 0)
    throw ConfigError("auc_score: need both a positive and a negative example");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // rank sum of positives, average rank across tie groups
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
    for (std::size_t t = i; t < j; ++t)
      if (labels[order[t]] == 1) rank_sum_pos += avg_rank;
    i = j;
  }
  double u = rank_sum_pos - 0.5 * static_cast<double>(pos) * static_cast<double>(pos + 1);
  return u / (static_cast<double>(pos) * static_cast<double>(neg));
}

}  // namespace bwmd
