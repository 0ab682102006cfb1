// Dictionary-parse Jaccard distance: parse sizes, closed-form families, a
// materialized phrase-set oracle, and sketch behavior.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <bwmd/lzjd.hpp>
#include <bwmd/rand.hpp>
#include <bwmd/sequence.hpp>

using namespace bwmd;

namespace {

Sequence random_sequence(Rng& rng, std::uint32_t sigma, std::size_t len) {
  Sequence s;
  s.alphabet_size = sigma;
  for (std::size_t i = 0; i < len; ++i)
    s.tokens.push_back(static_cast<std::uint32_t>(rng.next_below(sigma)));
  return s;
}

// Reference parse that stores the actual token vectors instead of hashes.
std::set<std::vector<std::uint32_t>> materialized_phrases(const Sequence& seq) {
  std::set<std::vector<std::uint32_t>> phrases;
  std::vector<std::uint32_t> cur;
  for (std::uint32_t tok : seq.tokens) {
    cur.push_back(tok);
    if (!phrases.count(cur)) {
      phrases.insert(cur);
      cur.clear();
    }
  }
  return phrases;
}

double materialized_distance(const Sequence& u, const Sequence& v) {
  auto a = materialized_phrases(u);
  auto b = materialized_phrases(v);
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  for (const auto& p : a)
    if (b.count(p)) ++inter;
  return 1.0 - static_cast<double>(inter) / static_cast<double>(a.size() + b.size() - inter);
}

Sequence ones_run(const char* id, std::size_t len) {
  Sequence s;
  s.id = id;
  s.alphabet_size = 4;
  s.tokens.assign(len, 1);
  return s;
}

}  // namespace

TEST_CASE("parse sizes on single-symbol runs") {
  CHECK(lz_set(ones_run("a3", 3)).size() == 2);    // 1, 11
  CHECK(lz_set(ones_run("a10", 10)).size() == 4);  // 1, 11, 111, 1111
  CHECK(lz_set(ones_run("a1", 1)).size() == 1);
  Sequence empty;
  empty.alphabet_size = 4;
  CHECK(lz_set(empty).size() == 0);
}

TEST_CASE("triangular-length runs give closed-form distances") {
  // A run of triangular length m(m+1)/2 parses into exactly the m prefixes,
  // so two triangular runs have nested phrase sets: the distance is
  // 1 - m_small/m_big, which the square-root closed form reproduces
  // bit-for-bit (both sides divide the same real quotient).
  auto dist = [](std::size_t len_u, std::size_t len_v) {
    return lzjd_distance(ones_run("u", len_u), ones_run("v", len_v));
  };
  auto closed_form = [](std::size_t n1, std::size_t n2) {
    return 1.0 - (std::sqrt(8.0 * static_cast<double>(n1) + 1.0) - 1.0) /
                     (std::sqrt(8.0 * static_cast<double>(n2) + 1.0) - 1.0);
  };
  CHECK(dist(3, 10) == 0.5);  // phrase sets {1,11} vs {1,11,111,1111}
  CHECK(dist(3, 10) == closed_form(3, 10));
  CHECK(dist(6, 15) == 0.4);
  CHECK(dist(6, 15) == closed_form(6, 15));
  CHECK(dist(10, 21) == closed_form(10, 21));
  CHECK(dist(15, 15) == 0.0);
}

TEST_CASE("matches the materialized phrase-set oracle") {
  Rng rng(0x17d1);
  for (int t = 0; t < 200; ++t) {
    std::uint32_t sigma = t % 2 == 0 ? 2 : 16;
    auto u = random_sequence(rng, sigma, rng.next_below(600));
    auto v = random_sequence(rng, sigma, rng.next_below(600));
    CHECK(lz_set(u).size() == materialized_phrases(u).size());
    CHECK(lzjd_distance(u, v) == Catch::Approx(materialized_distance(u, v)).margin(1e-15));
  }
}

TEST_CASE("identity, symmetry, and triangle inequality") {
  Rng rng(0x17d2);
  for (int t = 0; t < 200; ++t) {
    auto u = random_sequence(rng, 4, 1 + rng.next_below(300));
    auto v = random_sequence(rng, 4, 1 + rng.next_below(300));
    auto w = random_sequence(rng, 4, 1 + rng.next_below(300));
    CHECK(lzjd_distance(u, u) == 0.0);
    double uv = lzjd_distance(u, v);
    CHECK(uv == lzjd_distance(v, u));
    CHECK(uv >= 0.0);
    CHECK(uv <= 1.0);
    CHECK(uv <= lzjd_distance(u, w) + lzjd_distance(w, v) + 1e-12);
  }
}

TEST_CASE("empty handling") {
  Sequence empty;
  empty.alphabet_size = 4;
  CHECK(lzjd_distance(empty, empty) == 0.0);
  CHECK(lzjd_distance(empty, ones_run("v", 5)) == 1.0);
}

TEST_CASE("sketch path is exact on nested phrase sets") {
  // The bottom-k estimate truncates the union to the larger signature size;
  // with nested sets nothing is cut, so the estimate equals the exact value.
  for (std::size_t big : {10ul, 21ul, 55ul, 105ul}) {
    auto su = lz_set(ones_run("u", 6), 100000);
    auto sv = lz_set(ones_run("v", big), 100000);
    REQUIRE(su.sketch.has_value());
    CHECK(lzjd_distance(su, sv) == lzjd_distance(ones_run("u", 6), ones_run("v", big)));
  }
}

TEST_CASE("sketch estimate tracks the exact distance") {
  Rng rng(0x17d4);
  int within = 0, total = 0;
  for (int t = 0; t < 20; ++t) {
    auto u = random_sequence(rng, 4, 40000 + rng.next_below(20000));
    auto v = random_sequence(rng, 4, 40000 + rng.next_below(20000));
    auto fu = lz_set(u);
    auto fv = lz_set(v);
    REQUIRE(fu.size() + fv.size() >= 10 * 1024);  // unions big enough to stress k=1024
    double exact = lzjd_distance(fu, fv);
    double est = lzjd_distance(lz_set(u, 1024), lz_set(v, 1024));
    ++total;
    if (std::abs(est - exact) <= 0.05) ++within;
  }
  CHECK(within >= total - 1);  // 95% of pairs
}

TEST_CASE("mixed sketch and full sets fall back to exact") {
  auto u = ones_run("u", 10);
  auto v = ones_run("v", 6);
  auto su = lz_set(u, 2);
  auto fv = lz_set(v);
  // only one side has a sketch, so the exact path runs on full hash sets
  CHECK(lzjd_distance(su, fv) == lzjd_distance(lz_set(u), fv));
}

TEST_CASE("sketch size errors") {
  CHECK_THROWS_AS(lz_set(ones_run("u", 5), 0), ConfigError);
}
