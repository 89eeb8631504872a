#include <benchmark/benchmark.h>

#include <vector>

#include "tilebars/parallel.hpp"
#include "tilebars/synthetic.hpp"
#include "tilebars/training.hpp"

using namespace tilebars;

namespace {

const std::vector<DocumentRecord>& corpus() {
  static const std::vector<DocumentRecord> docs = [] {
    std::vector<DocumentRecord> out;
    for (int i = 0; i < 64; ++i) {
      out.push_back({"doc" + std::to_string(i), topic_block_document(static_cast<std::uint64_t>(i) + 1).text});
    }
    return out;
  }();
  return docs;
}

const std::vector<SegmentedDocument>& segmented() {
  static const auto docs = segment_corpus_serial(corpus(), SegmenterOptions{}, Stopwords{});
  return docs;
}

std::vector<std::string> query() {
  const auto& first = segmented().front().total_term_counts;
  std::vector<std::string> q;
  for (const auto& [term, count] : first) {
    if (q.size() < 4) q.push_back(term);
  }
  return q;
}

void BM_SegmentCorpus(benchmark::State& state) {
  const Parallelism p{static_cast<int>(state.range(0))};
  corpus();
  for (auto _ : state) {
    if (p.jobs == 1) {
      benchmark::DoNotOptimize(segment_corpus_serial(corpus(), SegmenterOptions{}, Stopwords{}));
    } else {
      benchmark::DoNotOptimize(segment_corpus(corpus(), SegmenterOptions{}, Stopwords{}, p));
    }
  }
}

void BM_Stats(benchmark::State& state) {
  const Parallelism p{static_cast<int>(state.range(0))};
  segmented();
  for (auto _ : state) {
    if (p.jobs == 1) {
      benchmark::DoNotOptimize(stats_from_segments_serial(segmented()));
    } else {
      benchmark::DoNotOptimize(stats_from_segments(segmented(), p));
    }
  }
}

void BM_BuildMatrices(benchmark::State& state) {
  const Parallelism p{static_cast<int>(state.range(0))};
  const auto stats = stats_from_segments_serial(segmented());
  const auto q = query();
  for (auto _ : state) {
    if (p.jobs == 1) {
      benchmark::DoNotOptimize(build_matrices_serial(q, segmented(), stats, nullptr, 4, 30));
    } else {
      benchmark::DoNotOptimize(build_matrices(q, segmented(), stats, nullptr, 4, 30, p));
    }
  }
}

void BM_ScoreBatch(benchmark::State& state) {
  const Parallelism p{static_cast<int>(state.range(0))};
  const auto stats = stats_from_segments_serial(segmented());
  const auto matrices = build_matrices_serial(query(), segmented(), stats, nullptr, 4, 30);
  RankerModel model(4, 30, Hyperparams::trec());
  model.initialize(Hyperparams::trec());
  for (auto _ : state) {
    if (p.jobs == 1) {
      benchmark::DoNotOptimize(score_batch_serial(model, matrices));
    } else {
      benchmark::DoNotOptimize(score_batch(model, matrices, p));
    }
  }
}

void BM_Gradients(benchmark::State& state) {
  RankerModel model(4, 30, Hyperparams::trec());
  model.initialize(Hyperparams::trec());
  const auto pos = random_matrix(4, 30, 1);
  const auto neg = random_matrix(4, 30, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gradients(model, pos, neg));
}

}  // namespace

// Argument: worker threads (1 = serial reference, 0 = OpenMP default).
BENCHMARK(BM_SegmentCorpus)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Stats)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildMatrices)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreBatch)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gradients)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
