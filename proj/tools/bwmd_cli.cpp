// bwmd: sequence similarity via Burrows-Wheeler transition embeddings, with
// EBWT and LZJD baselines, clustering, k-NN search and experiment harnesses.
//
// Subcommands: embed, dist, cluster, knn, experiment.
// Exit codes: 0 success, 2 configuration error, 3 I/O error, 4 degenerate
// input.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <bwmd/bwmd.hpp>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitDegenerate = 4;

struct CorpusOptions {
  std::string input;       // FASTA file (dna) or directory (bytes) or corpus manifest (json)
  std::string alphabet = "bytes";
  std::string labels;      // optional labels csv for byte dirs
};

void add_corpus_options(CLI::App* cmd, CorpusOptions& opts, bool required = true) {
  auto* pos = cmd->add_option("input", opts.input,
                              "FASTA file (--alphabet dna), directory of byte files "
                              "(--alphabet bytes), or corpus manifest JSON");
  if (required) pos->required();
  cmd->add_option("--alphabet", opts.alphabet, "Input alphabet")
      ->check(CLI::IsMember({"dna", "bytes"}))
      ->capture_default_str();
  cmd->add_option("--labels", opts.labels, "Labels CSV (filename,label) for byte directories");
}

bwmd::Corpus load_corpus(const CorpusOptions& opts) {
  namespace fs = std::filesystem;
  fs::path p(opts.input);
  if (fs::is_directory(p)) {
    if (opts.alphabet != "bytes")
      throw bwmd::ConfigError("directory input requires --alphabet bytes");
    std::optional<fs::path> labels;
    if (!opts.labels.empty()) labels = fs::path(opts.labels);
    return bwmd::load_bytes_dir(p, labels);
  }
  if (p.extension() == ".json") return bwmd::load_corpus_manifest(p);
  if (opts.alphabet != "dna")
    throw bwmd::ConfigError("single-file input must be FASTA with --alphabet dna");
  bwmd::Corpus c = bwmd::load_fasta(p);
  if (!opts.labels.empty()) {
    auto labels = bwmd::load_labels_csv(opts.labels);
    for (auto& item : c.items) {
      auto it = labels.find(item.seq.id);
      if (it != labels.end()) item.label = it->second;
    }
  }
  return c;
}

// Embed a whole corpus; degenerate sequences abort with their ids listed.
std::vector<bwmd::BwmdEmbedding> embed_corpus(const bwmd::Corpus& corpus, unsigned threads) {
  std::vector<bwmd::BwmdEmbedding> embs(corpus.size());
  std::vector<std::string> degenerate(corpus.size());
  bwmd::parallel_for(corpus.size(), threads, [&](std::size_t i) {
    try {
      embs[i] = bwmd::embed(corpus.items[i].seq);
    } catch (const bwmd::DegenerateInputError&) {
      degenerate[i] = corpus.items[i].seq.id;
    }
  });
  std::string bad;
  for (const auto& id : degenerate)
    if (!id.empty()) bad += (bad.empty() ? "" : ", ") + id;
  if (!bad.empty())
    throw bwmd::DegenerateInputError("sequences too short to embed: " + bad);
  return embs;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw bwmd::IoError("cannot write " + path.string());
  return out;
}

// ---------------------------------------------------------------------------
// embed

struct EmbedConfig {
  CorpusOptions corpus;
  std::string out;
  unsigned threads = bwmd::default_thread_count();
};

void run_embed(const EmbedConfig& cfg) {
  bwmd::Corpus corpus = load_corpus(cfg.corpus);
  std::vector<bwmd::BwmdEmbedding> embs = embed_corpus(corpus, cfg.threads);
  std::vector<std::string> ids = corpus.ids();
  std::filesystem::path cache(cfg.out);
  std::filesystem::path manifest = cache;
  manifest += ".manifest.json";
  bwmd::write_embedding_cache(cache, manifest, ids, embs);
  std::cout << "embedded " << embs.size() << " sequences (dimension "
            << (embs.empty() ? 0 : embs[0].dimension()) << ") -> " << cache.string() << "\n";
}

// ---------------------------------------------------------------------------
// dist

struct DistConfig {
  CorpusOptions corpus;
  std::string cache;  // embedding cache manifest (bwmd only), alternative input
  std::string metric = "bwmd";
  std::string out;
  bool normalize = false;
  unsigned threads = bwmd::default_thread_count();
};

bwmd::DistanceMatrix distance_matrix_for(const DistConfig& cfg, std::vector<std::string>& ids_out) {
  if (!cfg.cache.empty()) {
    if (cfg.metric != "bwmd")
      throw bwmd::ConfigError("--cache input only applies to --metric bwmd");
    bwmd::EmbeddingCache cache = bwmd::read_embedding_cache(cfg.cache);
    ids_out = cache.ids;
    return bwmd::DistanceMatrix::build(
        cache.ids,
        [&](std::size_t i, std::size_t j) {
          return bwmd::bwmd_distance(cache.embeddings[i], cache.embeddings[j]);
        },
        cfg.threads);
  }

  bwmd::Corpus corpus = load_corpus(cfg.corpus);
  ids_out = corpus.ids();
  if (cfg.metric == "bwmd") {
    std::vector<bwmd::BwmdEmbedding> embs = embed_corpus(corpus, cfg.threads);
    return bwmd::DistanceMatrix::build(
        ids_out,
        [&](std::size_t i, std::size_t j) { return bwmd::bwmd_distance(embs[i], embs[j]); },
        cfg.threads);
  }
  if (cfg.metric == "lzjd") {
    std::vector<bwmd::LzSet> sets(corpus.size());
    bwmd::parallel_for(corpus.size(), cfg.threads,
                       [&](std::size_t i) { sets[i] = bwmd::lz_set(corpus.items[i].seq); });
    return bwmd::DistanceMatrix::build(
        ids_out,
        [&](std::size_t i, std::size_t j) { return bwmd::lzjd_distance(sets[i], sets[j]); },
        cfg.threads);
  }
  // ebwt
  return bwmd::DistanceMatrix::build(
      ids_out,
      [&](std::size_t i, std::size_t j) {
        const bwmd::Sequence& u = corpus.items[i].seq;
        const bwmd::Sequence& v = corpus.items[j].seq;
        if (cfg.normalize) return bwmd::ebwt_distance_normalized(u, v);
        return static_cast<double>(bwmd::ebwt_distance(u, v));
      },
      cfg.threads);
}

void write_matrix_csv(const bwmd::DistanceMatrix& m, std::ostream& out) {
  out << "id";
  for (const auto& l : m.labels()) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.labels()[i];
    for (std::size_t j = 0; j < m.size(); ++j) out << ',' << bwmd::format_g12(m(i, j));
    out << '\n';
  }
}

void run_dist(const DistConfig& cfg) {
  std::vector<std::string> ids;
  bwmd::DistanceMatrix m = distance_matrix_for(cfg, ids);
  if (cfg.out.empty()) {
    write_matrix_csv(m, std::cout);
  } else {
    auto out = open_out(cfg.out);
    write_matrix_csv(m, out);
    std::cout << "wrote " << m.size() << "x" << m.size() << " matrix -> " << cfg.out << "\n";
  }
}

// ---------------------------------------------------------------------------
// cluster

struct ClusterConfig {
  CorpusOptions corpus;
  std::string cache;
  std::string metric = "bwmd";
  std::string method = "single";  // single | average | kmeans
  std::size_t k = 0;              // 0 = no flat cut for hierarchical
  std::uint64_t seed = 42;
  std::string out;
  unsigned threads = bwmd::default_thread_count();
};

void write_assignment_csv(std::span<const std::string> ids,
                          std::span<const std::uint32_t> labels, std::ostream& out) {
  out << "id,cluster\n";
  for (std::size_t i = 0; i < ids.size(); ++i) out << ids[i] << ',' << labels[i] << '\n';
}

void run_cluster(const ClusterConfig& cfg) {
  if (cfg.method == "kmeans" && cfg.metric != "bwmd")
    throw bwmd::ConfigError("kmeans clustering requires --metric bwmd "
                            "(it averages embedding coordinates)");
  if (cfg.method == "kmeans" && cfg.k == 0)
    throw bwmd::ConfigError("kmeans clustering requires --k");

  std::filesystem::path prefix(cfg.out.empty() ? "clusters" : cfg.out);

  // corpus labels drive the quality metrics when present
  std::optional<std::vector<std::string>> truth;
  std::vector<std::string> ids;
  std::vector<std::uint32_t> flat;
  std::uint32_t cluster_count = 0;
  nlohmann::ordered_json report;
  report["metric"] = cfg.metric;
  report["method"] = cfg.method;
  report["seed"] = cfg.seed;

  if (cfg.method == "kmeans") {
    std::vector<bwmd::BwmdEmbedding> embs;
    if (!cfg.cache.empty()) {
      bwmd::EmbeddingCache cache = bwmd::read_embedding_cache(cfg.cache);
      ids = cache.ids;
      embs = std::move(cache.embeddings);
    } else {
      bwmd::Corpus corpus = load_corpus(cfg.corpus);
      ids = corpus.ids();
      embs = embed_corpus(corpus, cfg.threads);
      bool labeled = !corpus.items.empty() &&
                     std::all_of(corpus.items.begin(), corpus.items.end(),
                                 [](const bwmd::CorpusItem& it) { return it.label.has_value(); });
      if (labeled) {
        truth.emplace();
        for (const auto& it : corpus.items) truth->push_back(*it.label);
      }
    }
    bwmd::KmeansOptions opts;
    opts.threads = cfg.threads;
    bwmd::KmeansResult res =
        bwmd::kmeans(embs, static_cast<std::uint32_t>(cfg.k), cfg.seed, opts);
    flat = res.labels;
    cluster_count = res.cluster_count;
    report["k"] = cfg.k;
    report["iterations"] = res.iterations;
    report["converged"] = res.converged;
    report["inertia"] = res.inertia;
  } else {
    DistConfig dist_cfg;
    dist_cfg.corpus = cfg.corpus;
    dist_cfg.cache = cfg.cache;
    dist_cfg.metric = cfg.metric;
    dist_cfg.threads = cfg.threads;
    if (cfg.cache.empty()) {
      bwmd::Corpus corpus = load_corpus(cfg.corpus);
      bool labeled = !corpus.items.empty() &&
                     std::all_of(corpus.items.begin(), corpus.items.end(),
                                 [](const bwmd::CorpusItem& it) { return it.label.has_value(); });
      if (labeled) {
        truth.emplace();
        for (const auto& it : corpus.items) truth->push_back(*it.label);
      }
    }
    bwmd::DistanceMatrix m = distance_matrix_for(dist_cfg, ids);
    bwmd::Dendrogram dendro = bwmd::hierarchical_cluster(
        m, cfg.method == "single" ? bwmd::Linkage::Single : bwmd::Linkage::Average);

    auto newick = open_out(std::filesystem::path(prefix).concat(".newick"));
    newick << bwmd::to_newick(dendro) << '\n';
    auto dot = open_out(std::filesystem::path(prefix).concat(".dot"));
    dot << bwmd::to_dot(dendro);

    if (cfg.k > 0) {
      bwmd::ClusterAssignment cut = bwmd::cut_dendrogram(dendro, cfg.k);
      flat = cut.labels;
      cluster_count = cut.cluster_count;
      report["k"] = cfg.k;
    }
  }

  if (!flat.empty()) {
    auto assign = open_out(std::filesystem::path(prefix).concat(".assign.csv"));
    write_assignment_csv(ids, flat, assign);
    report["clusters"] = cluster_count;

    if (truth) {
      std::vector<std::uint32_t> truth_ids = bwmd::encode_labels(*truth);
      bwmd::HcvScores s = bwmd::homogeneity_completeness_v(truth_ids, flat);
      report["homogeneity"] = s.homogeneity;
      report["completeness"] = s.completeness;
      report["v_measure"] = s.v_measure;

      // one table row per run: dataset, metric, method, k regime, scores
      auto csv = open_out(std::filesystem::path(prefix).concat(".metrics.csv"));
      csv << "dataset,metric,method,k,homogeneity,completeness,v_measure\n";
      csv << cfg.corpus.input << ',' << cfg.metric << ',' << cfg.method << ',' << cfg.k << ','
          << bwmd::format_g12(s.homogeneity) << ',' << bwmd::format_g12(s.completeness) << ','
          << bwmd::format_g12(s.v_measure) << '\n';
    }
  }

  auto json_out = open_out(std::filesystem::path(prefix).concat(".metrics.json"));
  json_out << report.dump(2) << '\n';
  std::cout << "cluster report -> " << prefix.string() << ".metrics.json\n";
}

// ---------------------------------------------------------------------------
// knn

struct KnnConfig {
  CorpusOptions corpus;
  std::string cache;
  std::string queries;  // optional query corpus; default: leave-one-out over input
  std::string metric = "bwmd";
  std::string index = "brute";
  std::size_t k = 9;
  std::size_t candidate_multiplier = 16;
  std::size_t directions = 8;
  std::uint64_t seed = 42;
  std::string out;
  std::string save_index;
  std::string load_index;
  std::string positive_label;  // known-positive class for vote scores
  unsigned threads = bwmd::default_thread_count();
};

void run_knn(const KnnConfig& cfg) {
  if (cfg.k == 0) throw bwmd::ConfigError("--k must be positive");
  if (cfg.index == "proj" && cfg.metric != "bwmd")
    throw bwmd::ConfigError("projection index requires the Euclidean bwmd metric");
  if (cfg.index == "vp" && cfg.metric == "ebwt")
    throw bwmd::ConfigError("vp index needs a triangle-inequality metric (bwmd or lzjd)");

  bwmd::Corpus corpus = load_corpus(cfg.corpus);
  std::vector<std::string> ids = corpus.ids();

  const bool self_query = cfg.queries.empty();
  bwmd::Corpus query_corpus;
  if (!self_query) {
    CorpusOptions qopts = cfg.corpus;
    qopts.input = cfg.queries;
    qopts.labels.clear();
    query_corpus = load_corpus(qopts);
  }
  const bwmd::Corpus& queries = self_query ? corpus : query_corpus;

  // per-item labels for voting, when every corpus item is labeled
  std::vector<std::string> label_names;
  std::vector<std::uint32_t> label_ids;
  bool labeled = !corpus.items.empty() &&
                 std::all_of(corpus.items.begin(), corpus.items.end(),
                             [](const bwmd::CorpusItem& it) { return it.label.has_value(); });
  if (labeled) {
    for (const auto& it : corpus.items) label_names.push_back(*it.label);
    label_ids = bwmd::encode_labels(label_names);
  }

  std::ostream* out_stream = &std::cout;
  std::ofstream out_file;
  if (!cfg.out.empty()) {
    out_file = open_out(cfg.out);
    out_stream = &out_file;
  }
  *out_stream << "query_id,rank,neighbor_id,distance\n";

  std::optional<std::ofstream> votes;
  if (labeled) {
    std::filesystem::path vp = cfg.out.empty() ? std::filesystem::path("votes.csv")
                                               : std::filesystem::path(cfg.out + ".votes.csv");
    votes.emplace(vp);
    if (!*votes) throw bwmd::IoError("cannot write " + vp.string());
    *votes << "query_id,predicted_label,positive_fraction,true_label\n";
  }

  std::uint32_t positive_id = 1;
  if (labeled && !cfg.positive_label.empty()) {
    auto it = std::find(label_names.begin(), label_names.end(), cfg.positive_label);
    if (it == label_names.end())
      throw bwmd::ConfigError("positive label '" + cfg.positive_label + "' not present");
    positive_id = label_ids[static_cast<std::size_t>(it - label_names.begin())];
  }

  auto emit = [&](std::size_t qi, const bwmd::NeighborResult& nn) {
    const std::string& qid = queries.items[qi].seq.id;
    for (std::size_t r = 0; r < nn.ids.size(); ++r)
      *out_stream << qid << ',' << r + 1 << ',' << ids[nn.ids[r]] << ','
                  << bwmd::format_g12(nn.distances[r]) << '\n';
    if (votes) {
      bwmd::VoteResult v = bwmd::majority_vote(nn, label_ids, positive_id);
      *votes << qid << ',' << label_names[std::find(label_ids.begin(), label_ids.end(), v.label) -
                                          label_ids.begin()]
             << ',' << bwmd::format_g12(v.positive_fraction) << ','
             << (qi < corpus.items.size() && self_query ? label_names[qi] : "") << '\n';
    }
  };

  // strip the query itself from leave-one-out results
  auto strip_self = [&](std::size_t qi, bwmd::NeighborResult nn) {
    if (!self_query) return nn;
    for (std::size_t r = 0; r < nn.ids.size(); ++r) {
      if (nn.ids[r] == qi) {
        nn.ids.erase(nn.ids.begin() + static_cast<std::ptrdiff_t>(r));
        nn.distances.erase(nn.distances.begin() + static_cast<std::ptrdiff_t>(r));
        break;
      }
    }
    if (nn.ids.size() > cfg.k) {
      nn.ids.resize(cfg.k);
      nn.distances.resize(cfg.k);
    }
    return nn;
  };
  // ask for one extra neighbor so stripping the query leaves k
  const std::size_t fetch_k = self_query ? cfg.k + 1 : cfg.k;

  if (cfg.metric == "lzjd") {
    std::vector<bwmd::LzSet> sets(corpus.size());
    bwmd::parallel_for(corpus.size(), cfg.threads,
                       [&](std::size_t i) { sets[i] = bwmd::lz_set(corpus.items[i].seq); });
    std::vector<bwmd::LzSet> qsets(queries.size());
    if (self_query)
      qsets = sets;
    else
      bwmd::parallel_for(queries.size(), cfg.threads,
                         [&](std::size_t i) { qsets[i] = bwmd::lz_set(queries.items[i].seq); });

    if (cfg.index == "vp") {
      bwmd::VpTree<bwmd::LzSet, bwmd::LzjdMetric> tree(sets, bwmd::LzjdMetric{}, cfg.seed);
      if (!cfg.save_index.empty()) {
        std::ofstream f(cfg.save_index, std::ios::binary);
        bwmd::save_vp_tree(tree, f);
      }
      for (std::size_t qi = 0; qi < queries.size(); ++qi)
        emit(qi, strip_self(qi, tree.query(qsets[qi], fetch_k)));
    } else {
      for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        auto nn = bwmd::knn_brute(sets.size(), fetch_k, [&](std::size_t i) {
          return bwmd::lzjd_distance(qsets[qi], sets[i]);
        });
        emit(qi, strip_self(qi, nn));
      }
    }
    return;
  }

  if (cfg.metric == "ebwt") {
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
      auto nn = bwmd::knn_brute(corpus.size(), fetch_k, [&](std::size_t i) {
        return static_cast<double>(bwmd::ebwt_distance(queries.items[qi].seq, corpus.items[i].seq));
      });
      emit(qi, strip_self(qi, nn));
    }
    return;
  }

  // bwmd
  std::vector<bwmd::BwmdEmbedding> embs;
  if (!cfg.cache.empty()) {
    bwmd::EmbeddingCache cache = bwmd::read_embedding_cache(cfg.cache);
    ids = cache.ids;
    embs = std::move(cache.embeddings);
  } else {
    embs = embed_corpus(corpus, cfg.threads);
  }
  std::vector<bwmd::BwmdEmbedding> qembs;
  if (self_query)
    qembs = embs;
  else
    qembs = embed_corpus(queries, cfg.threads);

  if (cfg.index == "vp") {
    std::unique_ptr<bwmd::VpTree<bwmd::BwmdEmbedding, bwmd::BwmdMetric>> tree;
    if (!cfg.load_index.empty()) {
      std::ifstream f(cfg.load_index, std::ios::binary);
      if (!f) throw bwmd::IoError("cannot open index " + cfg.load_index);
      tree = std::make_unique<bwmd::VpTree<bwmd::BwmdEmbedding, bwmd::BwmdMetric>>(
          bwmd::load_vp_tree<bwmd::BwmdEmbedding, bwmd::BwmdMetric>(f, bwmd::BwmdMetric{}));
    } else {
      tree = std::make_unique<bwmd::VpTree<bwmd::BwmdEmbedding, bwmd::BwmdMetric>>(
          embs, bwmd::BwmdMetric{}, cfg.seed);
    }
    if (!cfg.save_index.empty()) {
      std::ofstream f(cfg.save_index, std::ios::binary);
      if (!f) throw bwmd::IoError("cannot write index " + cfg.save_index);
      bwmd::save_vp_tree(*tree, f);
    }
    for (std::size_t qi = 0; qi < queries.size(); ++qi)
      emit(qi, strip_self(qi, tree->query(qembs[qi], fetch_k)));
  } else if (cfg.index == "proj") {
    std::unique_ptr<bwmd::ProjectionIndex> index;
    if (!cfg.load_index.empty()) {
      std::ifstream f(cfg.load_index, std::ios::binary);
      if (!f) throw bwmd::IoError("cannot open index " + cfg.load_index);
      index = std::make_unique<bwmd::ProjectionIndex>(bwmd::load_projection_index(f));
    } else {
      index = std::make_unique<bwmd::ProjectionIndex>(embs, cfg.directions, cfg.seed);
    }
    if (!cfg.save_index.empty()) {
      std::ofstream f(cfg.save_index, std::ios::binary);
      if (!f) throw bwmd::IoError("cannot write index " + cfg.save_index);
      bwmd::save_projection_index(*index, f);
    }
    for (std::size_t qi = 0; qi < queries.size(); ++qi)
      emit(qi, strip_self(qi, index->query(qembs[qi], fetch_k, cfg.candidate_multiplier)));
  } else {
    for (std::size_t qi = 0; qi < queries.size(); ++qi) {
      auto nn = bwmd::knn_brute(embs.size(), fetch_k, [&](std::size_t i) {
        return bwmd::bwmd_distance(qembs[qi], embs[i]);
      });
      emit(qi, strip_self(qi, nn));
    }
  }
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentConfig {
  std::string kind;  // random-grid | entropy-sweep | properties
  std::vector<std::size_t> lengths = {100, 1000, 10000};
  std::vector<double> targets = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::size_t length = 100000;
  std::size_t trials = 10;
  std::uint64_t seed = 42;
  std::string out = "experiment";
  unsigned threads = bwmd::default_thread_count();
};

void run_experiment(const ExperimentConfig& cfg) {
  std::filesystem::path prefix(cfg.out);
  nlohmann::ordered_json config;
  config["kind"] = cfg.kind;
  config["seed"] = cfg.seed;
  config["trials"] = cfg.trials;

  if (cfg.kind == "random-grid") {
    config["lengths"] = cfg.lengths;
    bwmd::GridTable table =
        bwmd::random_grid_experiment(cfg.lengths, cfg.trials, cfg.seed, cfg.threads);
    auto out = open_out(std::filesystem::path(prefix).concat(".csv"));
    out << bwmd::to_csv(table);
  } else if (cfg.kind == "entropy-sweep") {
    config["length"] = cfg.length;
    config["targets"] = cfg.targets;
    bwmd::SweepTable table =
        bwmd::entropy_sweep_experiment(cfg.length, cfg.targets, cfg.trials, cfg.seed, cfg.threads);
    auto out = open_out(std::filesystem::path(prefix).concat(".csv"));
    out << bwmd::to_csv(table);
  } else if (cfg.kind == "properties") {
    bwmd::PropertyReport report = bwmd::property_suite(cfg.seed);
    auto out = open_out(std::filesystem::path(prefix).concat(".txt"));
    out << bwmd::to_text(report);
    std::cout << bwmd::to_text(report);
    if (!report.all_passed()) throw bwmd::ConfigError("property suite reported failures");
  } else {
    throw bwmd::ConfigError("unknown experiment kind '" + cfg.kind + "'");
  }

  auto cfg_out = open_out(std::filesystem::path(prefix).concat(".config.json"));
  cfg_out << config.dump(2) << '\n';
  std::cout << "experiment outputs -> " << prefix.string() << ".*\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sequence similarity toolkit: Burrows-Wheeler transition embeddings "
               "(bwmd), extended-BWT merge distance (ebwt), and LZ phrase-set "
               "Jaccard distance (lzjd)"};
  app.require_subcommand(1);

  EmbedConfig embed_cfg;
  auto* embed = app.add_subcommand("embed", "Embed a corpus and write an embedding cache");
  add_corpus_options(embed, embed_cfg.corpus);
  embed->add_option("--out", embed_cfg.out, "Cache file path")->required();
  embed->add_option("--threads", embed_cfg.threads, "Worker threads");

  DistConfig dist_cfg;
  auto* dist = app.add_subcommand("dist", "Pairwise distance matrix over a corpus");
  add_corpus_options(dist, dist_cfg.corpus, false);
  dist->add_option("--cache", dist_cfg.cache, "Embedding cache manifest (bwmd only)");
  dist->add_option("--metric", dist_cfg.metric, "Distance")
      ->check(CLI::IsMember({"bwmd", "ebwt", "lzjd"}))
      ->capture_default_str();
  dist->add_flag("--normalize", dist_cfg.normalize, "Normalize ebwt by |u|+|v|-2");
  dist->add_option("--out", dist_cfg.out, "Output CSV (default stdout)");
  dist->add_option("--threads", dist_cfg.threads, "Worker threads");

  ClusterConfig cluster_cfg;
  std::string linkage_flag;
  auto* cluster = app.add_subcommand("cluster", "Hierarchical or k-means clustering");
  add_corpus_options(cluster, cluster_cfg.corpus, false);
  cluster->add_option("--cache", cluster_cfg.cache, "Embedding cache manifest (bwmd only)");
  cluster->add_option("--metric", cluster_cfg.metric, "Distance")
      ->check(CLI::IsMember({"bwmd", "ebwt", "lzjd"}))
      ->capture_default_str();
  cluster->add_option("--method", cluster_cfg.method, "Clustering algorithm")
      ->check(CLI::IsMember({"single", "average", "kmeans"}))
      ->capture_default_str();
  cluster->add_option("--linkage", linkage_flag, "Hierarchical linkage (alias for --method)")
      ->check(CLI::IsMember({"single", "average"}));
  cluster->add_option("--k", cluster_cfg.k, "Flat cluster count (cut height for hierarchical)");
  cluster->add_option("--seed", cluster_cfg.seed, "Random seed")->capture_default_str();
  cluster->add_option("--out", cluster_cfg.out, "Output prefix");
  cluster->add_option("--threads", cluster_cfg.threads, "Worker threads");

  KnnConfig knn_cfg;
  auto* knn = app.add_subcommand("knn", "k nearest neighbors / classification");
  add_corpus_options(knn, knn_cfg.corpus);
  knn->add_option("--cache", knn_cfg.cache, "Embedding cache manifest (bwmd only)");
  knn->add_option("--queries", knn_cfg.queries,
                  "Query corpus (default: leave-one-out over the input corpus)");
  knn->add_option("--metric", knn_cfg.metric, "Distance")
      ->check(CLI::IsMember({"bwmd", "ebwt", "lzjd"}))
      ->capture_default_str();
  knn->add_option("--index", knn_cfg.index, "Search structure")
      ->check(CLI::IsMember({"brute", "vp", "proj"}))
      ->capture_default_str();
  knn->add_option("--k", knn_cfg.k, "Neighbor count")->capture_default_str();
  knn->add_option("--candidates", knn_cfg.candidate_multiplier,
                  "Projection index candidate multiplier c (pool = c*k per direction)")
      ->capture_default_str();
  knn->add_option("--directions", knn_cfg.directions, "Projection index direction count m")
      ->capture_default_str();
  knn->add_option("--seed", knn_cfg.seed, "Random seed")->capture_default_str();
  knn->add_option("--out", knn_cfg.out, "Neighbor CSV path (default stdout)");
  knn->add_option("--save-index", knn_cfg.save_index, "Serialize the index here after building");
  knn->add_option("--load-index", knn_cfg.load_index, "Load a serialized index instead of building");
  knn->add_option("--positive-label", knn_cfg.positive_label,
                  "Class treated as positive in vote scores");
  knn->add_option("--threads", knn_cfg.threads, "Worker threads");

  ExperimentConfig exp_cfg;
  auto* experiment = app.add_subcommand("experiment", "Bundled experiment harnesses");
  experiment->add_option("kind", exp_cfg.kind, "random-grid | entropy-sweep | properties")
      ->required();
  experiment->add_option("--lengths", exp_cfg.lengths, "Grid lengths")->delimiter(',');
  experiment->add_option("--targets", exp_cfg.targets, "Sweep entropy targets")->delimiter(',');
  experiment->add_option("--length", exp_cfg.length, "Sweep sequence length")
      ->capture_default_str();
  experiment->add_option("--trials", exp_cfg.trials, "Trials per cell")->capture_default_str();
  experiment->add_option("--seed", exp_cfg.seed, "Random seed")->capture_default_str();
  experiment->add_option("--out", exp_cfg.out, "Output prefix")->capture_default_str();
  experiment->add_option("--threads", exp_cfg.threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (embed->parsed()) run_embed(embed_cfg);
    if (dist->parsed()) run_dist(dist_cfg);
    if (cluster->parsed()) {
      if (!linkage_flag.empty()) cluster_cfg.method = linkage_flag;
      run_cluster(cluster_cfg);
    }
    if (knn->parsed()) run_knn(knn_cfg);
    if (experiment->parsed()) run_experiment(exp_cfg);
  } catch (const bwmd::DegenerateInputError& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const bwmd::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const bwmd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
