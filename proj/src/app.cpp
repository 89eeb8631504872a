#include "tilebars/app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <utility>

#include "tilebars/checkpoint.hpp"
#include "tilebars/metrics.hpp"
#include "tilebars/rng.hpp"
#include "tilebars/synthetic.hpp"

#ifndef TILEBARS_VERSION
#define TILEBARS_VERSION "dev"
#endif

namespace tilebars {
namespace {

void require_file(const fs::path& path, const std::string& what) {
  if (path.empty()) throw InputError(what + " path not given");
  std::error_code ec;
  if (!fs::exists(path, ec)) throw InputError(what + " not found: " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create directory " + dir.string() + ": " + ec.message());
}

Stopwords load_stopwords(const RunConfig& config) {
  if (config.stopwords.empty()) return Stopwords::english();
  require_file(config.stopwords, "stopword list");
  return Stopwords::load(config.stopwords);
}

std::vector<Query> load_queries(const RunConfig& config, const Stopwords& stopwords) {
  require_file(config.queries, "queries file");
  return parse_queries(config.queries, stopwords);
}

QrelSet load_qrels(const RunConfig& config) {
  require_file(config.qrels, "qrels file");
  return parse_qrels(config.qrels);
}

const Query& find_query(const std::vector<Query>& queries, const std::string& id) {
  for (const auto& q : queries) {
    if (q.query_id == id) return q;
  }
  throw LookupError("unknown query id: " + id);
}

std::optional<EmbeddingStore> load_optional_embeddings(const RunConfig& config) {
  if (config.embeddings.empty()) return std::nullopt;
  require_file(config.embeddings, "embeddings file");
  return load_embeddings(config.embeddings);
}

fs::path model_path(const RunConfig& config) {
  return config.model.empty() ? config.output_dir / "model.ckpt" : config.model;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// Builds interaction matrices for (query, document) pairs, either over the
/// cached segments or, for the word-to-word ablation, over single words.
class MatrixFactory {
 public:
  MatrixFactory(const RunConfig& config, const LoadedIndex& index, const EmbeddingStore* embeddings,
                const Stopwords& stopwords)
      : config_(config), index_(index), embeddings_(embeddings) {
    if (!config.word_to_word) return;
    require_file(config.corpus, "corpus");
    const auto records = load_corpus(config.corpus, parse_corpus_format(config.corpus_format));
    for (const auto& record : records) {
      words_.emplace(record.doc_id, word_level_document(record.doc_id, tokenize_terms(record.text, stopwords)));
    }
  }

  const SegmentedDocument& document(std::string_view doc_id) const {
    if (!config_.word_to_word) return index_.document(doc_id);
    auto it = words_.find(doc_id);
    if (it == words_.end()) throw LookupError("document " + std::string(doc_id) + " missing from corpus");
    return it->second;
  }

  InteractionMatrix matrix(const std::vector<std::string>& terms, std::string_view doc_id, int n_q, int n_b) const {
    return build_matrix(terms, document(doc_id), index_.stats, embeddings_, n_q, n_b);
  }

  std::vector<InteractionMatrix> all(const std::vector<std::string>& terms, int n_q, int n_b) const {
    if (!config_.word_to_word) {
      return build_matrices(terms, index_.cache.documents, index_.stats, embeddings_, n_q, n_b,
                            Parallelism{config_.jobs});
    }
    std::vector<InteractionMatrix> out(index_.cache.documents.size());
    parallel_for(out.size(), Parallelism{config_.jobs}, [&](std::size_t i) {
      out[i] = matrix(terms, index_.cache.documents[i].doc_id, n_q, n_b);
    });
    return out;
  }

 private:
  const RunConfig& config_;
  const LoadedIndex& index_;
  const EmbeddingStore* embeddings_;
  std::map<std::string, SegmentedDocument, std::less<>> words_;
};

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json hp = {
      {"max_kernel", c.hp.max_kernel},         {"filters", c.hp.filters},
      {"hidden", c.hp.hidden},                 {"mlp_sizes", c.hp.mlp_sizes},
      {"learning_rate", c.hp.learning_rate},   {"l2_coefficient", c.hp.l2_coefficient},
      {"adam_beta1", c.hp.adam_beta1},         {"adam_beta2", c.hp.adam_beta2},
      {"adam_epsilon", c.hp.adam_epsilon},     {"patience", c.hp.patience},
      {"max_epochs", c.hp.max_epochs},         {"init_scale", c.hp.init_scale},
      {"validation_fraction", c.hp.validation_fraction}, {"forget_bias", c.hp.forget_bias},
  };
  return {
      {"corpus", c.corpus.generic_string()},
      {"corpus_format", c.corpus_format},
      {"queries", c.queries.generic_string()},
      {"qrels", c.qrels.generic_string()},
      {"embeddings", c.embeddings.generic_string()},
      {"stopwords", c.stopwords.generic_string()},
      {"index_dir", c.index_dir.generic_string()},
      {"model", c.model.generic_string()},
      {"run", c.run.generic_string()},
      {"output_dir", c.output_dir.generic_string()},
      {"alpha", c.segmentation.alpha},
      {"beta", c.segmentation.beta},
      {"paragraph_snap", c.segmentation.paragraph_snap},
      {"valleys_only", c.segmentation.valleys_only},
      {"smoothing_width", c.segmentation.smoothing_width},
      {"n_q", c.n_q},
      {"n_b", c.n_b},
      {"profile", c.profile},
      {"hyperparams", hp},
      {"seed", c.seed},
      {"jobs", c.jobs},
      {"triples_per_query", c.triples_per_query},
      {"word_to_word", c.word_to_word},
      {"folds", c.folds},
      {"cutoffs", c.cutoffs},
      {"baseline", c.baseline},
      {"bm25_k1", c.bm25.k1},
      {"bm25_b", c.bm25.b},
      {"lm_mu", c.lm_mu},
      {"run_tag", c.run_tag},
      {"render_cell_px", c.render.cell_px},
      {"render_mode", render_mode_name(c.render.mode)},
      {"render_gamma", c.render.gamma},
      {"render_grid_lines", c.render.grid_lines},
  };
}

void write_history(const fs::path& path, const std::vector<TrainingResult>& results) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << "fold\tepoch\ttrain_loss\tvalidation_loss\ttrain_accuracy\timproved\n";
  for (std::size_t f = 0; f < results.size(); ++f) {
    for (const auto& e : results[f].history) {
      out << f + 1 << '\t' << e.epoch << '\t' << format_real(e.train_loss) << '\t' << format_real(e.validation_loss)
          << '\t' << format_real(e.train_accuracy) << '\t' << (e.improved ? 1 : 0) << '\n';
    }
  }
}

Ranking baseline_ranking(const RunConfig& config, const Query& query, const LoadedIndex& index) {
  std::vector<ScoredDocument> scored;
  scored.reserve(index.cache.documents.size());
  if (config.baseline == "random") {
    Rng rng(config.seed ^ fnv1a(query.query_id));
    for (const auto& doc : index.cache.documents) scored.push_back({doc.doc_id, rng.uniform()});
  } else if (config.baseline == "bm25") {
    for (const auto& doc : index.cache.documents) {
      scored.push_back({doc.doc_id, bm25_score(query.terms, doc.total_term_counts, index.stats, config.bm25)});
    }
  } else if (config.baseline == "lm") {
    std::vector<std::string> skipped;
    lm_dirichlet_score(query.terms, TermCounts{}, index.stats, config.lm_mu, &skipped);
    for (const auto& doc : index.cache.documents) {
      scored.push_back({doc.doc_id, lm_dirichlet_score(query.terms, doc.total_term_counts, index.stats, config.lm_mu)});
    }
    for (const auto& term : skipped) warn("query " + query.query_id + ": term '" + term + "' not in collection");
  } else {
    throw InputError("unknown baseline: " + config.baseline + " (expected bm25, lm or random)");
  }
  return make_ranking(query.query_id, std::move(scored));
}

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

}  // namespace

Hyperparams profile_hyperparams(const std::string& profile) {
  if (profile == "trec") return Hyperparams::trec();
  if (profile == "letor") return Hyperparams::letor();
  throw InputError("unknown profile: " + profile + " (expected trec or letor)");
}

nlohmann::json run_metadata(const std::string& command, const RunConfig& config) {
  return {
      {"format", "tilebars-run-meta"},
      {"command", command},
      {"version", TILEBARS_VERSION},
      {"seed", config.seed},
      {"config", config_json(config)},
      {"decisions",
       {
           {"tokenizer", "unicode-lowercase-v1"},
           {"stopwords", config.stopwords.empty() ? "builtin-english-v1" : "file"},
           {"token_sequences", "paragraph-snap-v1"},
           {"boundaries", "valley-candidates-v1"},
           {"segment_cache", kSegmentCacheVersion},
           {"idf", "ln((N+1)/(df+1))+1"},
           {"squeeze", "merge-tail-into-last-slot-v1"},
           {"similarity", "max-gaussian-or-indicator-v1"},
           {"training_triples", "pos-graded-above-neg-v1"},
           {"validation_split", "round-fraction-keep-one-v1"},
           {"gradcheck", "kink-skip-floor-1e-6-v1"},
           {"checkpoint", kCheckpointVersion},
           {"err_max_grade", "qrels-max-v1"},
           {"render_quantization", "round-half-up-per-matrix-v1"},
       }},
  };
}

void write_run_metadata(const fs::path& dir, const std::string& command, const RunConfig& config) {
  ensure_dir(dir);
  std::ofstream out(dir / kRunMetaFile, std::ios::binary);
  if (!out) throw InputError("cannot write " + (dir / kRunMetaFile).string());
  out << run_metadata(command, config).dump(2) << '\n';
}

const SegmentedDocument& LoadedIndex::document(std::string_view doc_id) const {
  auto it = position.find(doc_id);
  if (it == position.end()) throw LookupError("unknown document id: " + std::string(doc_id));
  return cache.documents[it->second];
}

LoadedIndex load_index(const RunConfig& config) {
  const fs::path segments = config.index_dir / kSegmentsFile;
  const fs::path stats = config.index_dir / kStatsFile;
  require_file(segments, "segment cache");
  require_file(stats, "corpus stats");
  LoadedIndex index;
  index.cache = load_segment_cache(segments);
  if (auto mismatch = cache_parameter_mismatch(index.cache.header, config.segmentation)) warn(*mismatch);
  index.stats = CorpusStats::read(stats);
  for (std::size_t i = 0; i < index.cache.documents.size(); ++i) {
    index.position.emplace(index.cache.documents[i].doc_id, i);
  }
  return index;
}

IndexSummary cmd_index(const RunConfig& config) {
  require_file(config.corpus, "corpus");
  const Stopwords stopwords = load_stopwords(config);
  const auto records = load_corpus(config.corpus, parse_corpus_format(config.corpus_format));
  if (records.empty()) warn("corpus " + config.corpus.string() + " holds no documents");
  const auto documents = segment_corpus(records, config.segmentation, stopwords, Parallelism{config.jobs});
  const CorpusStats stats = stats_from_segments(documents, Parallelism{config.jobs});

  ensure_dir(config.index_dir);
  save_segment_cache(documents, SegmentCacheHeader{kSegmentCacheVersion, config.segmentation},
                     config.index_dir / kSegmentsFile);
  stats.write(config.index_dir / kStatsFile);
  write_run_metadata(config.index_dir, "index", config);

  IndexSummary summary;
  summary.documents = documents.size();
  for (const auto& d : documents) summary.segments += d.segments.size();
  summary.vocabulary = stats.vocabulary_size();
  return summary;
}

fs::path cmd_render(const RunConfig& config, const std::string& query_id, const std::string& doc_id) {
  config.render.validate();
  const Stopwords stopwords = load_stopwords(config);
  const auto queries = load_queries(config, stopwords);
  const LoadedIndex index = load_index(config);
  const auto embeddings = load_optional_embeddings(config);
  const Query& query = find_query(queries, query_id);
  index.document(doc_id);

  const MatrixFactory factory(config, index, embeddings ? &*embeddings : nullptr, stopwords);
  const int n_q = config.n_q > 0 ? config.n_q : longest_query(queries);
  const InteractionMatrix matrix = factory.matrix(query.terms, doc_id, n_q, config.n_b);

  ensure_dir(config.output_dir);
  const fs::path image = config.output_dir / render_file_name(query_id, doc_id, config.render.mode);
  {
    std::ofstream out(image, std::ios::binary);
    if (!out) throw InputError("cannot write " + image.string());
    out << render(matrix, config.render);
  }
  if (config.grid_dump) {
    fs::path dump = image;
    dump.replace_extension(".grid.txt");
    std::ofstream out(dump, std::ios::binary);
    out << render_grid_dump(matrix);
  }
  write_run_metadata(config.output_dir, "render", config);
  return image;
}

FoldSplit experiment_folds(const RunConfig& config, const QrelSet& qrels, const std::vector<Query>& queries) {
  std::set<std::string> known;
  for (const auto& q : queries) known.insert(q.query_id);
  std::vector<std::string> ids;
  for (const auto& id : qrels.query_ids()) {
    if (queries.empty() || known.count(id)) ids.push_back(id);
  }
  if (config.folds < 2) {
    FoldSplit one;
    one.folds.push_back(ids);
    return one;
  }
  if (static_cast<std::size_t>(config.folds) > ids.size()) {
    throw DataError("cannot split " + std::to_string(ids.size()) + " judged queries into " +
                    std::to_string(config.folds) + " folds");
  }
  return kfold_split(ids, config.folds, config.seed);
}

fs::path fold_checkpoint_path(const RunConfig& config, int fold) {
  return config.output_dir / ("model.fold" + std::to_string(fold + 1) + ".ckpt");
}

TrainSummary cmd_train(const RunConfig& config) {
  const Stopwords stopwords = load_stopwords(config);
  const auto queries = load_queries(config, stopwords);
  const QrelSet qrels = load_qrels(config);
  const LoadedIndex index = load_index(config);
  const auto embeddings = load_optional_embeddings(config);
  if (qrels.empty()) throw DataError("qrels file " + config.qrels.string() + " holds no judgments");

  Hyperparams hp = config.hp;
  hp.seed = config.seed;
  hp.validate();
  const int n_q = config.n_q > 0 ? config.n_q : longest_query(queries);
  const MatrixFactory factory(config, index, embeddings ? &*embeddings : nullptr, stopwords);

  std::map<std::string, const Query*> query_by_id;
  for (const auto& q : queries) query_by_id[q.query_id] = &q;

  std::vector<TrainingTriple> triples;
  std::size_t skipped = 0;
  for (auto& t : make_training_triples(qrels, config.triples_per_query, config.seed)) {
    const bool usable = query_by_id.count(t.query_id) && index.position.count(t.pos_doc_id) &&
                        index.position.count(t.neg_doc_id);
    if (usable) {
      triples.push_back(std::move(t));
    } else {
      ++skipped;
    }
  }
  if (skipped > 0) warn(std::to_string(skipped) + " training triples reference unknown queries or documents");
  if (triples.empty()) throw DataError("no usable training triples");

  std::map<std::pair<std::string, std::string>, InteractionMatrix> matrices;
  for (const auto& t : triples) {
    for (const auto* doc : {&t.pos_doc_id, &t.neg_doc_id}) {
      auto key = std::make_pair(t.query_id, *doc);
      if (!matrices.count(key)) {
        matrices.emplace(key, factory.matrix(query_by_id.at(t.query_id)->terms, *doc, n_q, config.n_b));
      }
    }
  }
  const MatrixLookup lookup = [&](const std::string& q, const std::string& d) -> const InteractionMatrix& {
    return matrices.at({q, d});
  };

  ensure_dir(config.output_dir);
  const FoldSplit folds = experiment_folds(config, qrels, queries);
  TrainSummary summary;
  if (folds.folds.size() < 2) {
    summary.results.push_back(train(triples, lookup, n_q, config.n_b, hp));
    summary.checkpoints.push_back(model_path(config));
    save_checkpoint(summary.results.back().model, summary.checkpoints.back());
  } else {
    for (std::size_t f = 0; f < folds.folds.size(); ++f) {
      const auto& held_out = folds.folds[f];
      std::vector<TrainingTriple> fold_triples;
      for (const auto& t : triples) {
        if (std::find(held_out.begin(), held_out.end(), t.query_id) == held_out.end()) fold_triples.push_back(t);
      }
      if (fold_triples.empty()) throw DataError("fold " + std::to_string(f + 1) + " leaves no training triples");
      summary.results.push_back(train(fold_triples, lookup, n_q, config.n_b, hp));
      summary.checkpoints.push_back(fold_checkpoint_path(config, static_cast<int>(f)));
      save_checkpoint(summary.results.back().model, summary.checkpoints.back());
    }
  }
  write_history(config.output_dir / kHistoryFile, summary.results);
  write_run_metadata(config.output_dir, "train", config);
  return summary;
}

std::vector<Ranking> cmd_rank(const RunConfig& config) {
  const Stopwords stopwords = load_stopwords(config);
  const auto queries = load_queries(config, stopwords);
  const LoadedIndex index = load_index(config);
  std::vector<Ranking> rankings;

  if (!config.baseline.empty()) {
    for (const auto& q : queries) rankings.push_back(baseline_ranking(config, q, index));
  } else {
    const auto embeddings = load_optional_embeddings(config);
    const MatrixFactory factory(config, index, embeddings ? &*embeddings : nullptr, stopwords);
    std::vector<RankerModel> models;
    FoldSplit folds;
    if (config.folds >= 2) {
      folds = experiment_folds(config, load_qrels(config), queries);
      for (std::size_t f = 0; f < folds.folds.size(); ++f) {
        const fs::path path = fold_checkpoint_path(config, static_cast<int>(f));
        require_file(path, "fold checkpoint");
        models.push_back(load_checkpoint(path));
      }
    } else {
      require_file(model_path(config), "model checkpoint");
      models.push_back(load_checkpoint(model_path(config)));
    }
    for (const auto& q : queries) {
      int fold = folds.folds.empty() ? 0 : folds.fold_of(q.query_id);
      if (fold < 0) {
        warn("query " + q.query_id + " is unjudged; ranking it with the fold 1 model");
        fold = 0;
      }
      const RankerModel& model = models[static_cast<std::size_t>(fold)];
      const auto matrices = factory.all(q.terms, model.n_q(), model.n_b());
      const auto scores = score_batch(model, matrices, Parallelism{config.jobs});
      std::vector<ScoredDocument> scored;
      for (std::size_t i = 0; i < scores.size(); ++i) scored.push_back({index.cache.documents[i].doc_id, scores[i]});
      rankings.push_back(make_ranking(q.query_id, std::move(scored)));
    }
  }

  ensure_dir(config.output_dir);
  const fs::path run = config.run.empty() ? config.output_dir / kRunFile : config.run;
  write_run(rankings, config.baseline.empty() ? config.run_tag : config.baseline, run);
  write_run_metadata(config.output_dir, "rank", config);
  return rankings;
}

MetricReport cmd_evaluate(const RunConfig& config, std::ostream& out) {
  const fs::path run = config.run.empty() ? config.output_dir / kRunFile : config.run;
  require_file(run, "run file");
  const QrelSet qrels = load_qrels(config);
  const auto rankings = read_run(run);
  const MetricReport report = evaluate_run(rankings, qrels, config.cutoffs);
  std::vector<MetricMeans> per_fold;
  if (config.folds >= 2) {
    std::vector<Query> queries;
    if (!config.queries.empty()) queries = load_queries(config, load_stopwords(config));
    per_fold = fold_means(report, experiment_folds(config, qrels, queries));
  }
  const std::string text = format_report(report, per_fold);
  ensure_dir(config.output_dir);
  {
    std::ofstream file(config.output_dir / kReportFile, std::ios::binary);
    if (!file) throw InputError("cannot write " + (config.output_dir / kReportFile).string());
    file << text;
  }
  out << text;
  write_run_metadata(config.output_dir, "evaluate", config);
  return report;
}

int cmd_gradcheck(const RunConfig& config, const GradCheckOptions& options, std::ostream& out) {
  const GradCheckReport r = grad_check(config.hp, options);
  out << "gradcheck l=3 F=2 H=2 n_q=3 n_b=8 epsilon=" << options.epsilon << " threshold=" << options.threshold
      << '\n';
  out << "checked " << r.checked << " parameters, skipped " << r.skipped_at_kinks << " at activation kinks\n";
  out << "max relative error " << r.max_relative_error << " (" << r.worst_tensor << " index " << r.worst_index
      << "), max absolute error " << r.max_absolute_error << '\n';
  out << "time " << r.seconds << " s\n";
  out << (r.passed ? "PASS" : "FAIL") << '\n';
  write_run_metadata(config.output_dir, "gradcheck", config);
  return r.passed ? 0 : kCheckFailed;
}

int cmd_selftest(const RunConfig& config, std::ostream& out) {
  std::vector<Check> checks;
  const auto run = [&](std::string name, const std::function<std::string()>& body) {
    Check c{std::move(name), false, {}};
    try {
      c.detail = body();
      c.passed = c.detail.empty();
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    checks.push_back(std::move(c));
  };

  run("gradcheck", [&] {
    const GradCheckReport r = grad_check(config.hp, GradCheckOptions{});
    return r.passed ? std::string() : "max relative error " + std::to_string(r.max_relative_error);
  });
  run("ndcg-example", [] {
    const Ranking ranking{"q", {{"a", 0}, {"c", 0}}};
    const QueryJudgments judged{{"a", 1}, {"c", 2}};
    const double v = ndcg_at_k(ranking, judged, 2);
    return std::abs(v - 0.79670) < 1e-4 ? std::string() : "nDCG " + std::to_string(v);
  });
  run("render-quantization", [] {
    InteractionMatrix m(1, 2);
    m.at(0, 0, kTfChannel) = 2;
    m.at(0, 1, kTfChannel) = 1;
    const std::string img = render(m, RenderSpec{1, RenderMode::kGrayscaleTf, 1.0, false});
    const auto px = img.substr(img.size() - 6);
    return static_cast<unsigned char>(px[0]) == 0 && static_cast<unsigned char>(px[3]) == 127
               ? std::string()
               : std::string("unexpected pixel values");
  });
  run("segmentation-two-topics", [] {
    TopicBlockOptions options;
    options.min_blocks = options.max_blocks = 2;
    const auto doc = topic_block_document(11, options);
    const auto seg = segment_document("d", doc.text, SegmenterOptions{}, Stopwords::english());
    for (const auto& s : seg.segments) {
      if (s.first <= doc.seams[0] && s.last > doc.seams[0] + 1) return std::string("seam not detected");
    }
    return std::string();
  });
  run("checkpoint-roundtrip", [] {
    RankerModel model(3, 30, Hyperparams{});
    model.initialize_uniform(3, 0.1);
    return parse_checkpoint(serialize_checkpoint(model)) == model ? std::string() : std::string("model differs");
  });
  run("conservation", [] {
    TopicBlockOptions options;
    const auto doc = topic_block_document(5, options);
    const auto seg = segment_document("d", doc.text, SegmenterOptions{}, Stopwords::english());
    CorpusStats stats;
    stats.add_document(seg.total_term_counts);
    std::vector<std::string> terms;
    for (const auto& [t, n] : seg.total_term_counts) {
      terms.push_back(t);
      if (terms.size() == 3) break;
    }
    const InteractionMatrix m = build_matrix(terms, seg, stats, nullptr, 3, 4);
    for (int i = 0; i < 3; ++i) {
      double sum = 0;
      for (int j = 0; j < 4; ++j) sum += m.at(i, j, kTfChannel);
      if (sum != static_cast<double>(seg.total_term_counts.at(terms[static_cast<std::size_t>(i)]))) {
        return std::string("tf sum differs for ") + terms[static_cast<std::size_t>(i)];
      }
    }
    return std::string();
  });
  run("parallel-matches-serial", [] {
    std::vector<DocumentRecord> corpus;
    for (int i = 0; i < 8; ++i) corpus.push_back({"d" + std::to_string(i), topic_block_document(100 + i).text});
    const auto a = segment_corpus(corpus, SegmenterOptions{}, Stopwords::english(), Parallelism{0});
    const auto b = segment_corpus_serial(corpus, SegmenterOptions{}, Stopwords::english());
    return a == b ? std::string() : std::string("segmentations differ");
  });

  bool all = true;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed) out << ": " << c.detail;
    out << '\n';
    all = all && c.passed;
  }
  write_run_metadata(config.output_dir, "selftest", config);
  return all ? 0 : kCheckFailed;
}

}  // namespace tilebars
