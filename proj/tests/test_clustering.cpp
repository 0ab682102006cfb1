// Agglomerative clustering: naive definition-level oracles for both linkage
// rules, a hand-worked 1-D example, tree serialization, and cut semantics.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include <bwmd/dendrogram.hpp>
#include <bwmd/distance_matrix.hpp>
#include <bwmd/hierarchical.hpp>
#include <bwmd/rand.hpp>

using namespace bwmd;

namespace {

using Partition = std::set<std::set<std::size_t>>;

Partition to_partition(const ClusterAssignment& assign) {
  std::vector<std::set<std::size_t>> groups(assign.cluster_count);
  for (std::size_t i = 0; i < assign.labels.size(); ++i) groups[assign.labels[i]].insert(i);
  return Partition(groups.begin(), groups.end());
}

// Greedy reference straight from the definition: keep explicit member lists,
// recompute every inter-cluster linkage from the original matrix, merge the
// closest pair. Returns the partition snapshot for every cluster count.
std::vector<Partition> naive_partitions(const DistanceMatrix& dist, Linkage link) {
  const std::size_t n = dist.size();
  std::vector<std::set<std::size_t>> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({i});

  std::vector<Partition> by_k(n + 1);
  by_k[n] = Partition(clusters.begin(), clusters.end());

  while (clusters.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        double v;
        if (link == Linkage::Single) {
          v = std::numeric_limits<double>::infinity();
          for (std::size_t a : clusters[i])
            for (std::size_t b : clusters[j]) v = std::min(v, dist(a, b));
        } else {
          v = 0.0;
          for (std::size_t a : clusters[i])
            for (std::size_t b : clusters[j]) v += dist(a, b);
          v /= static_cast<double>(clusters[i].size() * clusters[j].size());
        }
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    clusters[bi].insert(clusters[bj].begin(), clusters[bj].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    by_k[clusters.size()] = Partition(clusters.begin(), clusters.end());
  }
  return by_k;
}

DistanceMatrix random_matrix(Rng& rng, std::size_t n) {
  auto m = DistanceMatrix::with_size(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, 0.05 + rng.next_unit());
  return m;
}

DistanceMatrix line_matrix() {
  // three points on a line at 0, 1, 5
  DistanceMatrix m({"a", "b", "c"});
  m.set(0, 1, 1.0);
  m.set(0, 2, 5.0);
  m.set(1, 2, 4.0);
  return m;
}

void check_structure(const Dendrogram& d) {
  const std::size_t n = d.leaf_count;
  REQUIRE(d.merges.size() == n - 1);
  std::vector<char> used(2 * n - 1, 0);
  for (std::size_t m = 0; m < d.merges.size(); ++m) {
    const DendroMerge& mg = d.merges[m];
    CHECK(mg.id == n + m);
    CHECK(mg.left < mg.right);
    CHECK(mg.right < mg.id);
    CHECK(!used[mg.left]);
    CHECK(!used[mg.right]);
    used[mg.left] = used[mg.right] = 1;
    if (m > 0) CHECK(mg.height >= d.merges[m - 1].height);
  }
}

}  // namespace

TEST_CASE("three points on a line") {
  auto m = line_matrix();

  Dendrogram avg = average_linkage(m);
  REQUIRE(avg.merges.size() == 2);
  CHECK(avg.merges[0].left == 0);
  CHECK(avg.merges[0].right == 1);
  CHECK(avg.merges[0].height == 1.0);
  CHECK(avg.merges[1].left == 2);
  CHECK(avg.merges[1].right == 3);
  CHECK(avg.merges[1].height == 4.5);
  CHECK(to_newick(avg) == "(c:4.5,(a:1,b:1):3.5);");

  Dendrogram single = single_linkage(m);
  CHECK(single.merges[0].height == 1.0);
  CHECK(single.merges[1].height == 4.0);
  CHECK(to_newick(single) == "(c:4,(a:1,b:1):3);");

  auto cut2 = cut_dendrogram(avg, 2);
  CHECK(cut2.labels == std::vector<std::uint32_t>{0, 0, 1});
  auto cut1 = cut_dendrogram(avg, 1);
  CHECK(cut1.labels == std::vector<std::uint32_t>{0, 0, 0});
  auto cut3 = cut_dendrogram(avg, 3);
  CHECK(cut3.labels == std::vector<std::uint32_t>{0, 1, 2});
}

TEST_CASE("single linkage matches the greedy oracle at every cut") {
  Rng rng(0xc1a1);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + rng.next_below(38);
    auto m = random_matrix(rng, n);
    Dendrogram d = single_linkage(m);
    check_structure(d);
    auto oracle = naive_partitions(m, Linkage::Single);
    for (std::size_t k = 1; k <= n; ++k)
      REQUIRE(to_partition(cut_dendrogram(d, k)) == oracle[k]);
  }
}

TEST_CASE("average linkage matches the greedy oracle at every cut") {
  Rng rng(0xc1a2);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + rng.next_below(38);
    auto m = random_matrix(rng, n);
    Dendrogram d = average_linkage(m);
    check_structure(d);
    auto oracle = naive_partitions(m, Linkage::Average);
    for (std::size_t k = 1; k <= n; ++k)
      REQUIRE(to_partition(cut_dendrogram(d, k)) == oracle[k]);
  }
}

TEST_CASE("hierarchical_cluster dispatches on linkage") {
  auto m = line_matrix();
  CHECK(to_newick(hierarchical_cluster(m, Linkage::Single)) == to_newick(single_linkage(m)));
  CHECK(to_newick(hierarchical_cluster(m, Linkage::Average)) == to_newick(average_linkage(m)));
}

TEST_CASE("cut label ids follow first appearance in leaf order") {
  Rng rng(0xc1a3);
  auto m = random_matrix(rng, 25);
  Dendrogram d = average_linkage(m);
  for (std::size_t k = 1; k <= 25; ++k) {
    auto cut = cut_dendrogram(d, k);
    CHECK(cut.cluster_count == k);
    std::uint32_t seen = 0;
    for (std::uint32_t lab : cut.labels) {
      CHECK(lab <= seen);
      if (lab == seen) ++seen;
    }
    CHECK(seen == k);
  }
}

TEST_CASE("newick escapes awkward label characters") {
  DistanceMatrix m({"a b", "c,d"});
  m.set(0, 1, 2.0);
  Dendrogram d = single_linkage(m);
  CHECK(to_newick(d) == "(a_b:2,c_d:2);");
}

TEST_CASE("dot output lists every node and edge") {
  auto m = line_matrix();
  std::string dot = to_dot(average_linkage(m));
  CHECK(dot.find("digraph") != std::string::npos);
  for (const char* frag : {"n0", "n1", "n2", "n3", "n4", "n3 -> n0", "n4 -> n3"})
    CHECK(dot.find(frag) != std::string::npos);
}

TEST_CASE("two items") {
  DistanceMatrix m({"x", "y"});
  m.set(0, 1, 0.7);
  for (Linkage link : {Linkage::Single, Linkage::Average}) {
    Dendrogram d = hierarchical_cluster(m, link);
    REQUIRE(d.merges.size() == 1);
    CHECK(d.merges[0].height == 0.7);
    CHECK(to_newick(d) == "(x:0.7,y:0.7);");
  }
}

TEST_CASE("errors") {
  auto one = DistanceMatrix::with_size(1);
  CHECK_THROWS_AS(single_linkage(one), ConfigError);
  CHECK_THROWS_AS(average_linkage(one), ConfigError);

  auto m = line_matrix();
  Dendrogram d = single_linkage(m);
  CHECK_THROWS_AS(cut_dendrogram(d, 0), ConfigError);
  CHECK_THROWS_AS(cut_dendrogram(d, 4), ConfigError);

  CHECK_THROWS_AS(m.set(0, 1, -1.0), ConfigError);
  CHECK_THROWS_AS(m.set(0, 1, std::numeric_limits<double>::quiet_NaN()), ConfigError);
  CHECK_THROWS_AS(m.set(1, 1, 3.0), ConfigError);
  CHECK_THROWS_AS(DistanceMatrix::build({"a", "b"}, [](std::size_t, std::size_t) { return -0.5; }),
                  ConfigError);
  CHECK(m(2, 1) == m(1, 2));
}
