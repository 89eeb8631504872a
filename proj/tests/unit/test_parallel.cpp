#include <gtest/gtest.h>

#include <atomic>

#include "tilebars/parallel.hpp"
#include "tilebars/synthetic.hpp"
#include "tilebars/training.hpp"

using namespace tilebars;

namespace {

std::vector<DocumentRecord> synthetic_corpus(int n) {
  std::vector<DocumentRecord> corpus;
  for (int i = 0; i < n; ++i) {
    corpus.push_back({"doc" + std::to_string(i), topic_block_document(static_cast<std::uint64_t>(i) + 1).text});
  }
  return corpus;
}

}  // namespace

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(500);
  parallel_for(hits.size(), Parallelism{4}, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, RethrowsLowestIndexError) {
  try {
    parallel_for(100, Parallelism{4}, [](std::size_t i) {
      if (i == 17 || i == 60) throw LookupError("index " + std::to_string(i));
    });
    FAIL() << "no exception";
  } catch (const LookupError& e) {
    EXPECT_STREQ(e.what(), "index 17");
  }
}

TEST(Kernels, ParallelMatchesSerial) {
  const auto corpus = synthetic_corpus(24);
  const SegmenterOptions options;
  const auto serial = segment_corpus_serial(corpus, options, Stopwords{});
  for (int jobs : {0, 1, 3}) {
    const Parallelism p{jobs};
    const auto docs = segment_corpus(corpus, options, Stopwords{}, p);
    ASSERT_EQ(docs, serial);
    EXPECT_EQ(stats_from_segments(docs, p), stats_from_segments_serial(docs));

    const auto stats = stats_from_segments_serial(docs);
    const std::vector<std::string> query{docs[0].total_term_counts.begin()->first, "missing"};
    const auto matrices = build_matrices(query, docs, stats, nullptr, 3, 30, p);
    EXPECT_EQ(matrices, build_matrices_serial(query, docs, stats, nullptr, 3, 30));

    RankerModel model(3, 30, Hyperparams::trec());
    model.initialize(Hyperparams::trec());
    EXPECT_EQ(score_batch(model, matrices, p), score_batch_serial(model, matrices));
  }
}

TEST(Kernels, StatsShardingMatchesDirectAccumulation) {
  const auto docs = segment_corpus_serial(synthetic_corpus(150), SegmenterOptions{}, Stopwords{});
  CorpusStats direct;
  for (const auto& d : docs) direct.add_document(d.total_term_counts);
  EXPECT_EQ(stats_from_segments(docs, Parallelism{2}), direct);
}
