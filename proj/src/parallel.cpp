#include "tilebars/parallel.hpp"

#include <exception>
#include <limits>

#include <omp.h>

namespace tilebars {

void parallel_for(std::size_t n, Parallelism p, const std::function<void(std::size_t)>& body) {
  if (p.jobs == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const int threads = p.jobs > 0 ? p.jobs : omp_get_max_threads();
  std::exception_ptr failure;
  std::size_t failed_at = std::numeric_limits<std::size_t>::max();
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(tilebars_parallel_failure)
      {
        if (static_cast<std::size_t>(i) < failed_at) {
          failed_at = static_cast<std::size_t>(i);
          failure = std::current_exception();
        }
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<SegmentedDocument> segment_corpus(std::span<const DocumentRecord> corpus, const SegmenterOptions& options,
                                              const Stopwords& stopwords, Parallelism p) {
  std::vector<SegmentedDocument> out(corpus.size());
  parallel_for(corpus.size(), p, [&](std::size_t i) {
    out[i] = segment_document(corpus[i].doc_id, corpus[i].text, options, stopwords);
  });
  return out;
}

std::vector<SegmentedDocument> segment_corpus_serial(std::span<const DocumentRecord> corpus,
                                                     const SegmenterOptions& options, const Stopwords& stopwords) {
  std::vector<SegmentedDocument> out;
  out.reserve(corpus.size());
  for (const auto& record : corpus) out.push_back(segment_document(record.doc_id, record.text, options, stopwords));
  return out;
}

CorpusStats stats_from_segments(std::span<const SegmentedDocument> documents, Parallelism p) {
  const std::size_t shard_size = 64;
  const std::size_t shards = (documents.size() + shard_size - 1) / shard_size;
  std::vector<CorpusStats> partial(shards);
  parallel_for(shards, p, [&](std::size_t s) {
    const std::size_t end = std::min(documents.size(), (s + 1) * shard_size);
    for (std::size_t i = s * shard_size; i < end; ++i) partial[s].add_document(documents[i].total_term_counts);
  });
  CorpusStats stats;
  for (const auto& shard : partial) stats.merge(shard);
  return stats;
}

CorpusStats stats_from_segments_serial(std::span<const SegmentedDocument> documents) {
  CorpusStats stats;
  for (const auto& doc : documents) stats.add_document(doc.total_term_counts);
  return stats;
}

std::vector<InteractionMatrix> build_matrices(const std::vector<std::string>& query_terms,
                                              std::span<const SegmentedDocument> documents, const CorpusStats& stats,
                                              const EmbeddingStore* embeddings, int n_q, int n_b, Parallelism p) {
  std::vector<InteractionMatrix> out(documents.size());
  parallel_for(documents.size(), p, [&](std::size_t i) {
    out[i] = build_matrix(query_terms, documents[i], stats, embeddings, n_q, n_b);
  });
  return out;
}

std::vector<InteractionMatrix> build_matrices_serial(const std::vector<std::string>& query_terms,
                                                     std::span<const SegmentedDocument> documents,
                                                     const CorpusStats& stats, const EmbeddingStore* embeddings,
                                                     int n_q, int n_b) {
  std::vector<InteractionMatrix> out;
  out.reserve(documents.size());
  for (const auto& doc : documents) out.push_back(build_matrix(query_terms, doc, stats, embeddings, n_q, n_b));
  return out;
}

std::vector<double> score_batch(const RankerModel& model, std::span<const InteractionMatrix> matrices, Parallelism p) {
  std::vector<double> out(matrices.size());
  parallel_for(matrices.size(), p, [&](std::size_t i) { out[i] = score(model, matrices[i]); });
  return out;
}

std::vector<double> score_batch_serial(const RankerModel& model, std::span<const InteractionMatrix> matrices) {
  std::vector<double> out;
  out.reserve(matrices.size());
  for (const auto& m : matrices) out.push_back(score(model, m));
  return out;
}

}  // namespace tilebars
