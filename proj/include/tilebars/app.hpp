#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tilebars/baselines.hpp"
#include "tilebars/corpus.hpp"
#include "tilebars/evaluation.hpp"
#include "tilebars/parallel.hpp"
#include "tilebars/ranker.hpp"
#include "tilebars/render.hpp"
#include "tilebars/segment_cache.hpp"
#include "tilebars/training.hpp"

namespace tilebars {

namespace fs = std::filesystem;

/// Every setting a command may read. Paths left empty are not used.
struct RunConfig {
  fs::path corpus;
  std::string corpus_format = "dir";
  fs::path queries;
  fs::path qrels;
  fs::path embeddings;
  fs::path stopwords;  // empty: built-in English list
  fs::path index_dir = "index";
  fs::path model;      // checkpoint; defaults to <output_dir>/model.ckpt
  fs::path run;        // run file read by evaluate
  fs::path output_dir = "out";

  SegmenterOptions segmentation;
  int n_q = 0;  // 0: longest query
  int n_b = 30;
  std::string profile = "trec";
  Hyperparams hp;
  std::uint64_t seed = 1;
  int jobs = 0;

  std::size_t triples_per_query = 1000;
  bool word_to_word = false;
  int folds = 0;  // 0 or 1: no cross-validation
  std::vector<int> cutoffs = {5, 10, 20};
  std::string baseline;  // empty (model), bm25, lm or random
  Bm25Params bm25;
  double lm_mu = 2000.0;
  std::string run_tag = "tilebars";
  RenderSpec render;
  bool grid_dump = false;
};

inline constexpr const char* kSegmentsFile = "segments.jsonl";
inline constexpr const char* kStatsFile = "stats.tsv";
inline constexpr const char* kRunMetaFile = "run_meta.json";
inline constexpr const char* kHistoryFile = "history.tsv";
inline constexpr const char* kRunFile = "run.txt";
inline constexpr const char* kReportFile = "report.txt";

/// Exit status for a check that ran but did not pass.
inline constexpr int kCheckFailed = 1;

/// Defaults of the "trec" or "letor" profile. Throws InputError otherwise.
Hyperparams profile_hyperparams(const std::string& profile);

/// Config snapshot, seed and the version of every ledgered choice.
nlohmann::json run_metadata(const std::string& command, const RunConfig& config);
void write_run_metadata(const fs::path& dir, const std::string& command, const RunConfig& config);

struct LoadedIndex {
  SegmentCache cache;
  CorpusStats stats;
  std::map<std::string, std::size_t, std::less<>> position;  // doc id -> index

  const SegmentedDocument& document(std::string_view doc_id) const;
};

/// Reads <index_dir>/segments.jsonl and stats.tsv; warns when the cache was
/// built with different segmentation options.
LoadedIndex load_index(const RunConfig& config);

struct IndexSummary {
  std::size_t documents = 0;
  std::size_t segments = 0;
  std::size_t vocabulary = 0;
};

IndexSummary cmd_index(const RunConfig& config);

/// Path of the written image.
fs::path cmd_render(const RunConfig& config, const std::string& query_id, const std::string& doc_id);

struct TrainSummary {
  std::vector<fs::path> checkpoints;
  std::vector<TrainingResult> results;  // per fold, or one
};

TrainSummary cmd_train(const RunConfig& config);

/// Rankings for every query over every indexed document; also written to
/// <output_dir>/run.txt.
std::vector<Ranking> cmd_rank(const RunConfig& config);

MetricReport cmd_evaluate(const RunConfig& config, std::ostream& out);

/// Exit status 0 on pass, kCheckFailed otherwise.
int cmd_gradcheck(const RunConfig& config, const GradCheckOptions& options, std::ostream& out);

/// Runs built-in consistency checks; exit status as cmd_gradcheck.
int cmd_selftest(const RunConfig& config, std::ostream& out);

/// Folds over the judged query ids present in the queries file, or one
/// fold holding every id when config.folds < 2.
FoldSplit experiment_folds(const RunConfig& config, const QrelSet& qrels, const std::vector<Query>& queries);

fs::path fold_checkpoint_path(const RunConfig& config, int fold);

}  // namespace tilebars
