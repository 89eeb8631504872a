#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tilebars/corpus.hpp"
#include "tilebars/interaction.hpp"
#include "tilebars/ranker.hpp"
#include "tilebars/segmentation.hpp"

namespace tilebars {

/// Worker threads for the OpenMP kernels; 0 uses the OpenMP default and 1
/// runs the serial reference path.
struct Parallelism {
  int jobs = 0;
};

/// Runs body(i) for i in [0, n). An exception from any iteration is
/// rethrown after the loop; the lowest index wins.
void parallel_for(std::size_t n, Parallelism p, const std::function<void(std::size_t)>& body);

std::vector<SegmentedDocument> segment_corpus(std::span<const DocumentRecord> corpus, const SegmenterOptions& options,
                                              const Stopwords& stopwords, Parallelism p = {});
std::vector<SegmentedDocument> segment_corpus_serial(std::span<const DocumentRecord> corpus,
                                                     const SegmenterOptions& options, const Stopwords& stopwords);

/// Statistics of the documents' total term counts, accumulated per shard
/// and merged.
CorpusStats stats_from_segments(std::span<const SegmentedDocument> documents, Parallelism p = {});
CorpusStats stats_from_segments_serial(std::span<const SegmentedDocument> documents);

std::vector<InteractionMatrix> build_matrices(const std::vector<std::string>& query_terms,
                                              std::span<const SegmentedDocument> documents, const CorpusStats& stats,
                                              const EmbeddingStore* embeddings, int n_q, int n_b, Parallelism p = {});
std::vector<InteractionMatrix> build_matrices_serial(const std::vector<std::string>& query_terms,
                                                     std::span<const SegmentedDocument> documents,
                                                     const CorpusStats& stats, const EmbeddingStore* embeddings,
                                                     int n_q, int n_b);

std::vector<double> score_batch(const RankerModel& model, std::span<const InteractionMatrix> matrices,
                                Parallelism p = {});
std::vector<double> score_batch_serial(const RankerModel& model, std::span<const InteractionMatrix> matrices);

}  // namespace tilebars
