#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bwmd/corpus.hpp"
#include "bwmd/ebwt.hpp"
#include "bwmd/embedding.hpp"
#include "bwmd/entropy.hpp"
#include "bwmd/errors.hpp"
#include "bwmd/format.hpp"
#include "bwmd/lzjd.hpp"
#include "bwmd/parallel.hpp"
#include "bwmd/rand.hpp"

namespace bwmd {

/// Alphabet used by the random-sequence experiments.
constexpr std::uint32_t kExperimentAlphabet = 32;

/// Sequences longer than this skip the EBWT column (the merge comparator is
/// quadratic in the worst case; the other metrics scale further).
constexpr std::size_t kEbwtLengthCap = 100000;

struct GridRow {
  std::size_t len_x = 0;
  std::size_t len_y = 0;
  double ebwt = 0.0;  // NaN when the cell was skipped
  double bwmd = 0.0;
  double lzjd = 0.0;
};

struct GridTable {
  std::vector<GridRow> rows;
};

/// Mean distance between pairs of independent uniform-random sequences, one
/// row per (len_x, len_y) pair of the full length grid. Trials run
/// data-parallel; per-trial seeds depend only on (cell, trial), so results
/// are identical for any thread count.
inline GridTable random_grid_experiment(std::span<const std::size_t> lengths, std::size_t trials,
                                        std::uint64_t seed, unsigned threads = 1) {
  GridTable table;
  if (trials == 0 || lengths.empty()) return table;

  struct Cell {
    std::size_t len_x, len_y;
  };
  std::vector<Cell> cells;
  for (std::size_t lx : lengths)
    for (std::size_t ly : lengths) cells.push_back({lx, ly});

  struct Acc {
    double ebwt = 0.0, bwmd = 0.0, lzjd = 0.0;
  };
  std::vector<Acc> acc(cells.size() * trials);

  parallel_for(cells.size() * trials, threads, [&](std::size_t job) {
    const std::size_t cell = job / trials;
    const std::size_t trial = job % trials;
    const auto [lx, ly] = cells[cell];
    Sequence x = gen_uniform_sequence(kExperimentAlphabet, lx,
                                      mix_seed(seed, 2 * job, 0x67726964ULL));
    Sequence y = gen_uniform_sequence(kExperimentAlphabet, ly,
                                      mix_seed(seed, 2 * job + 1, 0x67726964ULL));
    Acc& a = acc[job];
    a.ebwt = std::max(lx, ly) <= kEbwtLengthCap
                 ? ebwt_distance_normalized(x, y)
                 : std::numeric_limits<double>::quiet_NaN();
    a.bwmd = bwmd_distance(embed(x), embed(y));
    a.lzjd = lzjd_distance(lz_set(x), lz_set(y));
  });

  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    GridRow row;
    row.len_x = cells[cell].len_x;
    row.len_y = cells[cell].len_y;
    row.ebwt = row.bwmd = row.lzjd = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const Acc& a = acc[cell * trials + t];
      row.ebwt += a.ebwt;
      row.bwmd += a.bwmd;
      row.lzjd += a.lzjd;
    }
    row.ebwt /= static_cast<double>(trials);
    row.bwmd /= static_cast<double>(trials);
    row.lzjd /= static_cast<double>(trials);
    table.rows.push_back(row);
  }
  return table;
}

inline std::string to_csv(const GridTable& table) {
  std::string out = "LenX,LenY,EBWT,BWMD,LZJD\n";
  for (const GridRow& r : table.rows) {
    out += std::to_string(r.len_x);
    out += ',';
    out += std::to_string(r.len_y);
    out += ',';
    out += std::isnan(r.ebwt) ? "" : format_g12(r.ebwt);
    out += ',';
    out += format_g12(r.bwmd);
    out += ',';
    out += format_g12(r.lzjd);
    out += '\n';
  }
  return out;
}

struct SweepRow {
  double entropy = 0.0;
  double ebwt = 0.0;
  double bwmd = 0.0;
  double lzjd = 0.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

/// Mean distance between a fresh uniform-random sequence and a sequence of
/// each target entropy, per target.
inline SweepTable entropy_sweep_experiment(std::size_t length, std::span<const double> targets,
                                           std::size_t trials, std::uint64_t seed,
                                           unsigned threads = 1) {
  SweepTable table;
  if (trials == 0 || targets.empty()) return table;

  struct Acc {
    double ebwt = 0.0, bwmd = 0.0, lzjd = 0.0;
  };
  std::vector<Acc> acc(targets.size() * trials);

  parallel_for(targets.size() * trials, threads, [&](std::size_t job) {
    const std::size_t ti = job / trials;
    Sequence base =
        gen_uniform_sequence(kExperimentAlphabet, length, mix_seed(seed, 2 * job, 0x73776570ULL));
    EntropySpec spec;
    spec.alphabet_size = kExperimentAlphabet;
    spec.target_entropy = targets[ti];
    spec.length = length;
    spec.seed = mix_seed(seed, 2 * job + 1, 0x73776570ULL);
    Sequence probe = gen_entropy_sequence(spec);
    Acc& a = acc[job];
    a.ebwt = length <= kEbwtLengthCap ? ebwt_distance_normalized(base, probe)
                                      : std::numeric_limits<double>::quiet_NaN();
    a.bwmd = bwmd_distance(embed(base), embed(probe));
    a.lzjd = lzjd_distance(lz_set(base), lz_set(probe));
  });

  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    SweepRow row;
    row.entropy = targets[ti];
    for (std::size_t t = 0; t < trials; ++t) {
      const Acc& a = acc[ti * trials + t];
      row.ebwt += a.ebwt;
      row.bwmd += a.bwmd;
      row.lzjd += a.lzjd;
    }
    row.ebwt /= static_cast<double>(trials);
    row.bwmd /= static_cast<double>(trials);
    row.lzjd /= static_cast<double>(trials);
    table.rows.push_back(row);
  }
  return table;
}

inline std::string to_csv(const SweepTable& table) {
  std::string out = "Entropy,EBWT,BWMD,LZJD\n";
  for (const SweepRow& r : table.rows) {
    out += format_g12(r.entropy);
    out += ',';
    out += std::isnan(r.ebwt) ? "" : format_g12(r.ebwt);
    out += ',';
    out += format_g12(r.bwmd);
    out += ',';
    out += format_g12(r.lzjd);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Randomized property suite over the three distances.

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::size_t trials = 0;
  std::string counterexample;  // empty when passed
};

struct PropertyReport {
  std::vector<PropertyResult> properties;

  bool all_passed() const {
    for (const auto& p : properties)
      if (!p.passed) return false;
    return true;
  }
};

/// Distance implementations under test. Tests of deliberate faults swap one
/// entry for a broken version and expect the matching property to fail.
struct PropertySuiteHooks {
  std::function<std::uint64_t(const Sequence&, const Sequence&)> ebwt =
      [](const Sequence& u, const Sequence& v) { return ebwt_distance(u, v); };
  std::function<double(const Sequence&, const Sequence&)> bwmd =
      [](const Sequence& u, const Sequence& v) { return bwmd_distance(u, v); };
  std::function<double(const Sequence&, const Sequence&)> lzjd =
      [](const Sequence& u, const Sequence& v) { return lzjd_distance(u, v); };
};

inline PropertyReport property_suite(std::uint64_t seed,
                                     const PropertySuiteHooks& hooks = PropertySuiteHooks{}) {
  PropertyReport report;

  auto run = [&report](const std::string& name, std::size_t trials,
                       const std::function<std::string(std::size_t)>& check) {
    PropertyResult r;
    r.name = name;
    r.trials = trials;
    r.passed = true;
    for (std::size_t t = 0; t < trials; ++t) {
      std::string fail = check(t);
      if (!fail.empty()) {
        r.passed = false;
        r.counterexample = fail;
        break;
      }
    }
    report.properties.push_back(std::move(r));
  };

  auto random_seq = [](Rng& rng, std::uint32_t sigma, std::size_t min_len, std::size_t max_len) {
    std::size_t len = min_len + static_cast<std::size_t>(rng.next_below(max_len - min_len + 1));
    Sequence s;
    s.alphabet_size = sigma;
    s.tokens.reserve(len);
    for (std::size_t i = 0; i < len; ++i)
      s.tokens.push_back(static_cast<std::uint32_t>(rng.next_below(sigma)));
    return s;
  };

  run("ebwt_length_gap_lower_bound", 500, [&](std::size_t t) -> std::string {
    Rng rng(mix_seed(seed, 1, t));
    std::uint32_t sigma = t % 2 == 0 ? 4 : 32;
    Sequence u = random_seq(rng, sigma, 1, 300);
    Sequence v = random_seq(rng, sigma, 1, 300);
    std::uint64_t d = hooks.ebwt(u, v);
    std::size_t gap = u.size() > v.size() ? u.size() - v.size() : v.size() - u.size();
    std::int64_t bound = static_cast<std::int64_t>(gap) - 1;
    if (static_cast<std::int64_t>(d) < bound) {
      std::ostringstream os;
      os << "|u|=" << u.size() << " |v|=" << v.size() << " distance=" << d
         << " below bound " << bound;
      return os.str();
    }
    return {};
  });

  run("ebwt_single_symbol_runs", 100, [&](std::size_t t) -> std::string {
    Rng rng(mix_seed(seed, 2, t));
    std::size_t n1 = 1 + static_cast<std::size_t>(rng.next_below(60));
    std::size_t n2 = n1 + 1 + static_cast<std::size_t>(rng.next_below(60));
    Sequence u = Sequence::from_tokens("u", std::vector<std::uint32_t>(n1, 0), 4);
    Sequence v = Sequence::from_tokens("v", std::vector<std::uint32_t>(n2, 0), 4);
    std::uint64_t d = hooks.ebwt(u, v);
    std::uint64_t want = n1 + n2 - 2;
    if (d != want) {
      std::ostringstream os;
      os << "n1=" << n1 << " n2=" << n2 << " distance=" << d << " expected " << want;
      return os.str();
    }
    return {};
  });

  run("ebwt_even_odd_interleave", 100, [&](std::size_t t) -> std::string {
    std::size_t n = t + 1;
    std::vector<std::uint32_t> ut(n), vt(n);
    for (std::size_t i = 0; i < n; ++i) {
      ut[i] = static_cast<std::uint32_t>(2 * i);
      vt[i] = static_cast<std::uint32_t>(2 * i + 1);
    }
    Sequence u = Sequence::from_tokens("u", std::move(ut), static_cast<std::uint32_t>(2 * n));
    Sequence v = Sequence::from_tokens("v", std::move(vt), static_cast<std::uint32_t>(2 * n));
    std::uint64_t d = hooks.ebwt(u, v);
    if (d != 0) {
      std::ostringstream os;
      os << "n=" << n << " distance=" << d << " expected 0";
      return os.str();
    }
    return {};
  });

  run("ebwt_symmetry", 200, [&](std::size_t t) -> std::string {
    Rng rng(mix_seed(seed, 3, t));
    Sequence u = random_seq(rng, 8, 1, 200);
    Sequence v = random_seq(rng, 8, 1, 200);
    std::uint64_t duv = hooks.ebwt(u, v);
    std::uint64_t dvu = hooks.ebwt(v, u);
    if (duv != dvu) {
      std::ostringstream os;
      os << "d(u,v)=" << duv << " d(v,u)=" << dvu;
      return os.str();
    }
    return {};
  });

  run("bwmd_single_symbol_zero", 100, [&](std::size_t t) -> std::string {
    Rng rng(mix_seed(seed, 4, t));
    std::size_t n1 = 2 + static_cast<std::size_t>(rng.next_below(100));
    std::size_t n2 = n1 + 1 + static_cast<std::size_t>(rng.next_below(100));
    Sequence u = Sequence::from_tokens("u", std::vector<std::uint32_t>(n1, 0), 1);
    Sequence v = Sequence::from_tokens("v", std::vector<std::uint32_t>(n2, 0), 1);
    double d = hooks.bwmd(u, v);
    if (d != 0.0) {
      std::ostringstream os;
      os << "n1=" << n1 << " n2=" << n2 << " distance=" << format_g12(d);
      return os.str();
    }
    return {};
  });

  // embedded sequences are drawn with length >= 3: a length-2 input can have
  // its two tokens split around the sentinel and refuse to embed
  run("bwmd_disjoint_alphabets_max", 200, [&](std::size_t t) -> std::string {
    Rng rng(mix_seed(seed, 5, t));
    std::size_t n1 = 3 + static_cast<std::size_t>(rng.next_below(200));
    std::size_t n2 = 3 + static_cast<std::size_t>(rng.next_below(200));
    std::vector<std::uint32_t> ut(n1), vt(n2);
    for (auto& x : ut) x = static_cast<std::uint32_t>(rng.next_below(2));      // {0,1}
    for (auto& x : vt) x = 2 + static_cast<std::uint32_t>(rng.next_below(2));  // {2,3}
    Sequence u = Sequence::from_tokens("u", std::move(ut), 4);
    Sequence v = Sequence::from_tokens("v", std::move(vt), 4);
    double d = hooks.bwmd(u, v);
    if (std::abs(d - 1.0) > 1e-9) {
      std::ostringstream os;
      os << "n1=" << n1 << " n2=" << n2 << " distance=" << format_g12(d) << " expected 1";
      return os.str();
    }
    return {};
  });

  run("bwmd_triangle_inequality", 500, [&](std::size_t t) -> std::string {
    Rng rng(mix_seed(seed, 6, t));
    Sequence a = random_seq(rng, 4, 3, 300);
    Sequence b = random_seq(rng, 4, 3, 300);
    Sequence c = random_seq(rng, 4, 3, 300);
    double dab = hooks.bwmd(a, b), dbc = hooks.bwmd(b, c), dac = hooks.bwmd(a, c);
    if (dac > dab + dbc + 1e-9) {
      std::ostringstream os;
      os << "d(a,c)=" << format_g12(dac) << " > d(a,b)+d(b,c)=" << format_g12(dab + dbc);
      return os.str();
    }
    return {};
  });

  run("lzjd_triangular_closed_form", 3, [&](std::size_t t) -> std::string {
    static constexpr std::pair<std::size_t, std::size_t> cases[] = {{3, 10}, {6, 15}, {10, 21}};
    auto [n1, n2] = cases[t];
    Sequence u = Sequence::from_tokens("u", std::vector<std::uint32_t>(n1, 0), 2);
    Sequence v = Sequence::from_tokens("v", std::vector<std::uint32_t>(n2, 0), 2);
    double d = hooks.lzjd(u, v);
    double want = 1.0 - (std::sqrt(8.0 * static_cast<double>(n1) + 1.0) - 1.0) /
                            (std::sqrt(8.0 * static_cast<double>(n2) + 1.0) - 1.0);
    if (d != want) {
      std::ostringstream os;
      os << "n1=" << n1 << " n2=" << n2 << " distance=" << format_g12(d) << " expected "
         << format_g12(want);
      return os.str();
    }
    return {};
  });

  run("lzjd_symmetry_and_triangle", 200, [&](std::size_t t) -> std::string {
    Rng rng(mix_seed(seed, 7, t));
    Sequence a = random_seq(rng, 4, 1, 400);
    Sequence b = random_seq(rng, 4, 1, 400);
    Sequence c = random_seq(rng, 4, 1, 400);
    double dab = hooks.lzjd(a, b), dba = hooks.lzjd(b, a);
    if (dab != dba) return "asymmetric pair at trial " + std::to_string(t);
    double dbc = hooks.lzjd(b, c), dac = hooks.lzjd(a, c);
    if (dac > dab + dbc + 1e-12) {
      std::ostringstream os;
      os << "d(a,c)=" << format_g12(dac) << " > " << format_g12(dab + dbc);
      return os.str();
    }
    return {};
  });

  return report;
}

inline std::string to_text(const PropertyReport& report) {
  std::string out;
  for (const auto& p : report.properties) {
    out += p.passed ? "PASS" : "FAIL";
    out += "  ";
    out += p.name;
    out += "  (";
    out += std::to_string(p.trials);
    out += " trials)";
    if (!p.passed) {
      out += "  counterexample: ";
      out += p.counterexample;
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Synthetic labeled corpus for end-to-end clustering checks.

/// Byte corpus of `families` classes: every family owns a disjoint slice of
/// the byte alphabet and a private random Markov chain over it, and each file
/// is a walk of that chain. Families are therefore near-orthogonal under
/// transition-based distances while files within a family stay close.
inline Corpus gen_planted_corpus(std::size_t families, std::size_t files_per_family,
                                 std::size_t min_len, std::size_t max_len, std::uint64_t seed) {
  if (families == 0 || files_per_family == 0)
    throw ConfigError("gen_planted_corpus: families and files_per_family must be positive");
  if (min_len < 2 || max_len < min_len)
    throw ConfigError("gen_planted_corpus: need 2 <= min_len <= max_len");
  const std::size_t states = std::min<std::size_t>(12, 256 / families);
  if (states < 2) throw ConfigError("gen_planted_corpus: too many families for the byte alphabet");

  Rng setup(mix_seed(seed, 0x706c616eULL));
  std::vector<std::uint8_t> bytes(256);
  std::iota(bytes.begin(), bytes.end(), 0);
  setup.shuffle(bytes.begin(), bytes.end());

  Corpus corpus;
  corpus.alphabet = Alphabet::Bytes256;
  for (std::size_t f = 0; f < families; ++f) {
    // family state space and transition rows
    std::vector<std::uint8_t> alphabet(bytes.begin() + f * states, bytes.begin() + (f + 1) * states);
    std::vector<double> rows(states * states);
    for (std::size_t s = 0; s < states; ++s) {
      double sum = 0.0;
      for (std::size_t t = 0; t < states; ++t) {
        double w = 0.05 + setup.next_unit();
        rows[s * states + t] = w;
        sum += w;
      }
      for (std::size_t t = 0; t < states; ++t) rows[s * states + t] /= sum;
    }

    for (std::size_t i = 0; i < files_per_family; ++i) {
      Rng rng(mix_seed(seed, f + 1, i));
      std::size_t len = min_len + static_cast<std::size_t>(rng.next_below(max_len - min_len + 1));
      std::size_t state = static_cast<std::size_t>(rng.next_below(states));
      Sequence s;
      s.alphabet_size = 256;
      s.tokens.reserve(len);
      for (std::size_t p = 0; p < len; ++p) {
        s.tokens.push_back(alphabet[state]);
        double r = rng.next_unit();
        double accp = 0.0;
        std::size_t next = states - 1;
        for (std::size_t t = 0; t < states; ++t) {
          accp += rows[state * states + t];
          if (r < accp) {
            next = t;
            break;
          }
        }
        state = next;
      }
      char idbuf[64];
      std::snprintf(idbuf, sizeof(idbuf), "fam%02zu_file%03zu", f, i);
      s.id = idbuf;
      CorpusItem item;
      item.seq = std::move(s);
      item.label = "fam" + std::to_string(f);
      item.kind = "synthetic";
      corpus.items.push_back(std::move(item));
    }
  }
  return corpus;
}

}  // namespace bwmd
