#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tilebars/corpus.hpp"
#include "tilebars/segmentation.hpp"

namespace tilebars {

enum Channel : int { kTfChannel = 0, kIdfChannel = 1, kSimChannel = 2 };
inline constexpr int kChannels = 3;

using CellColor = std::array<double, kChannels>;

/// Fixed n_q x n_b grid of three-channel cells, stored row-major with the
/// channel index innermost.
class InteractionMatrix {
 public:
  InteractionMatrix() = default;
  InteractionMatrix(int n_q, int n_b);

  int n_q() const { return n_q_; }
  int n_b() const { return n_b_; }

  double at(int row, int col, int channel) const { return cells_[offset(row, col, channel)]; }
  double& at(int row, int col, int channel) { return cells_[offset(row, col, channel)]; }

  CellColor cell(int row, int col) const;
  void set_cell(int row, int col, const CellColor& color);

  std::span<const double> values() const { return cells_; }
  std::span<double> values() { return cells_; }

  bool operator==(const InteractionMatrix&) const = default;

 private:
  std::size_t offset(int row, int col, int channel) const {
    return (static_cast<std::size_t>(row) * static_cast<std::size_t>(n_b_) + static_cast<std::size_t>(col)) *
               kChannels +
           static_cast<std::size_t>(channel);
  }

  int n_q_ = 0;
  int n_b_ = 0;
  std::vector<double> cells_;
};

/// Query padded with empty-word slots (nullopt) to exactly n_q.
struct StandardizedQuery {
  std::vector<std::optional<std::string>> slots;
  bool truncated = false;
};

/// Segments padded with empty-segment slots (nullopt) or squeezed so there
/// are exactly n_b slots.
struct StandardizedSegments {
  std::vector<std::optional<TermCounts>> slots;
};

/// Longer queries keep their first n_q terms and emit a warning.
StandardizedQuery standardize_query(const std::vector<std::string>& terms, int n_q);

/// Segments n_b..y of a y > n_b document are merged into slot n_b.
StandardizedSegments standardize_segments(const std::vector<Segment>& segments, int n_b);

/// (tf(w, B), idf(w) * [w in B], max over embedded t in B of
/// exp(-||v_w - v_t||^2)). Falls back to the exact-match indicator when w or
/// every term of B lacks a vector. Empty slots give (0, 0, 0).
CellColor color_cell(const std::optional<std::string>& term, const std::optional<TermCounts>& segment,
                     const CorpusStats& stats, const EmbeddingStore* embeddings);

InteractionMatrix build_matrix(const std::vector<std::string>& query_terms, const SegmentedDocument& document,
                               const CorpusStats& stats, const EmbeddingStore* embeddings, int n_q, int n_b);

/// Word-to-word ablation: every document term is its own pseudo-segment.
InteractionMatrix build_word_matrix(const std::vector<std::string>& query_terms,
                                    const std::vector<std::string>& document_terms, const CorpusStats& stats,
                                    const EmbeddingStore* embeddings, int n_q, int n_b);

}  // namespace tilebars
