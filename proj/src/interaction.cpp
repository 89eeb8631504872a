#include "tilebars/interaction.hpp"

#include <algorithm>
#include <cmath>

namespace tilebars {

InteractionMatrix::InteractionMatrix(int n_q, int n_b) : n_q_(n_q), n_b_(n_b) {
  if (n_q < 0 || n_b < 0) throw InvariantError("interaction matrix dimensions must be non-negative");
  cells_.assign(static_cast<std::size_t>(n_q) * static_cast<std::size_t>(n_b) * kChannels, 0.0);
}

CellColor InteractionMatrix::cell(int row, int col) const {
  return {at(row, col, kTfChannel), at(row, col, kIdfChannel), at(row, col, kSimChannel)};
}

void InteractionMatrix::set_cell(int row, int col, const CellColor& color) {
  for (int ch = 0; ch < kChannels; ++ch) at(row, col, ch) = color[static_cast<std::size_t>(ch)];
}

StandardizedQuery standardize_query(const std::vector<std::string>& terms, int n_q) {
  if (n_q < 1) throw InvariantError("standardized query length n_q must be >= 1");
  StandardizedQuery q;
  const auto width = static_cast<std::size_t>(n_q);
  q.slots.reserve(width);
  for (std::size_t i = 0; i < std::min(width, terms.size()); ++i) q.slots.emplace_back(terms[i]);
  q.slots.resize(width);
  if (terms.size() > width) {
    q.truncated = true;
    warn("query of " + std::to_string(terms.size()) + " terms truncated to n_q=" + std::to_string(n_q));
  }
  return q;
}

StandardizedSegments standardize_segments(const std::vector<Segment>& segments, int n_b) {
  if (n_b < 1) throw InvariantError("standardized segment count n_b must be >= 1");
  StandardizedSegments out;
  const auto width = static_cast<std::size_t>(n_b);
  out.slots.reserve(width);
  if (segments.size() <= width) {
    for (const auto& seg : segments) out.slots.emplace_back(seg.term_counts);
    out.slots.resize(width);
    return out;
  }
  for (std::size_t i = 0; i + 1 < width; ++i) out.slots.emplace_back(segments[i].term_counts);
  TermCounts tail;
  for (std::size_t i = width - 1; i < segments.size(); ++i) add_counts(tail, segments[i].term_counts);
  out.slots.emplace_back(std::move(tail));
  return out;
}

CellColor color_cell(const std::optional<std::string>& term, const std::optional<TermCounts>& segment,
                     const CorpusStats& stats, const EmbeddingStore* embeddings) {
  if (!term || !segment) return {0.0, 0.0, 0.0};
  const auto it = segment->find(*term);
  const double tf = it == segment->end() ? 0.0 : static_cast<double>(it->second);
  const double present = tf > 0.0 ? 1.0 : 0.0;

  double sim = present;
  const std::vector<double>* query_vec = embeddings ? embeddings->find(*term) : nullptr;
  if (query_vec) {
    double best = -1.0;
    for (const auto& [other, count] : *segment) {
      const std::vector<double>* vec = embeddings->find(other);
      if (!vec) continue;
      double dist2 = 0.0;
      for (std::size_t d = 0; d < vec->size(); ++d) {
        const double diff = (*query_vec)[d] - (*vec)[d];
        dist2 += diff * diff;
      }
      best = std::max(best, std::exp(-dist2));
    }
    if (best >= 0.0) sim = best;
  }
  return {tf, present > 0.0 ? stats.idf(*term) : 0.0, sim};
}

InteractionMatrix build_matrix(const std::vector<std::string>& query_terms, const SegmentedDocument& document,
                               const CorpusStats& stats, const EmbeddingStore* embeddings, int n_q, int n_b) {
  const StandardizedQuery query = standardize_query(query_terms, n_q);
  const StandardizedSegments segments = standardize_segments(document.segments, n_b);
  InteractionMatrix matrix(n_q, n_b);
  for (int i = 0; i < n_q; ++i) {
    for (int j = 0; j < n_b; ++j) {
      matrix.set_cell(i, j,
                      color_cell(query.slots[static_cast<std::size_t>(i)], segments.slots[static_cast<std::size_t>(j)],
                                 stats, embeddings));
    }
  }
  return matrix;
}

InteractionMatrix build_word_matrix(const std::vector<std::string>& query_terms,
                                    const std::vector<std::string>& document_terms, const CorpusStats& stats,
                                    const EmbeddingStore* embeddings, int n_q, int n_b) {
  return build_matrix(query_terms, word_level_document("", document_terms), stats, embeddings, n_q, n_b);
}

}  // namespace tilebars
