#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tilebars/common.hpp"
#include "tilebars/tokenizer.hpp"

namespace tilebars {

/// A pseudo-sentence of roughly `alpha` consecutive terms.
struct TokenSequence {
  int index = 0;  // 1-based
  std::vector<std::string> terms;
};

/// gaps[i - 1] is the windowed similarity between sequences i and i + 1.
struct SimilarityCurve {
  std::vector<double> gaps;
  int window = 0;
};

struct Segment {
  int index = 0;  // 1-based
  TermCounts term_counts;
  int first = 0;  // first covered token-sequence index
  int last = 0;   // last covered token-sequence index

  bool operator==(const Segment&) const = default;
};

struct SegmentedDocument {
  std::string doc_id;
  std::vector<Segment> segments;
  TermCounts total_term_counts;

  bool operator==(const SegmentedDocument&) const = default;
};

struct SegmenterOptions {
  int alpha = 20;
  int beta = 6;
  // A sequence cut snaps to a paragraph break within this many terms of the
  // nominal cut.
  int paragraph_snap = 5;
  // Restricts boundary candidates to local minima of the similarity curve.
  bool valleys_only = true;
  // Moving-average smoothing of the similarity curve; 0 disables it.
  int smoothing_width = 0;

  bool operator==(const SegmenterOptions&) const = default;
};

std::vector<TokenSequence> build_token_sequences(const std::vector<std::string>& terms,
                                                 const std::vector<std::size_t>& paragraph_breaks,
                                                 int alpha, int paragraph_snap = 5);

/// Cosine similarity of the aggregated term counts of the windows
/// [T(i-beta+1) .. T(i)] and [T(i+1) .. T(i+beta)], clipped at the document
/// edges. `gap` is 1-based. Throws InvariantError when gap is out of range.
double gap_similarity(const std::vector<TokenSequence>& sequences, int gap, int beta);

/// Empty when fewer than two sequences exist.
SimilarityCurve similarity_curve(const std::vector<TokenSequence>& sequences, int beta);

/// Centered moving average of half-width `width` (clipped at the ends).
SimilarityCurve smooth_curve(const SimilarityCurve& curve, int width);

/// Sum of the rises from gap `gap` (1-based) to its nearest left and right
/// peaks, found by walking outward while scores do not decrease.
double depth_score(const SimilarityCurve& curve, int gap);

std::vector<double> depth_scores(const SimilarityCurve& curve);

/// Gaps (1-based) with depth > mean - stddev / 2 (population stddev). No two
/// returned gaps are adjacent: the deeper one wins, ties keep the earlier.
std::set<int> find_boundaries(const std::vector<double>& depths);

/// As above; only gaps with candidates[gap - 1] set may become boundaries.
/// The threshold is still computed over every depth.
std::set<int> find_boundaries(const std::vector<double>& depths, const std::vector<bool>& candidates);

/// Gaps that are local minima of the curve with positive depth.
std::vector<bool> valley_candidates(const SimilarityCurve& curve, const std::vector<double>& depths);

/// Groups token sequences into segments given 1-based boundary gaps.
SegmentedDocument assemble_segments(std::string doc_id, const std::vector<TokenSequence>& sequences,
                                    const std::set<int>& boundaries);

/// Common interface for document segmenters.
class Segmenter {
 public:
  virtual ~Segmenter() = default;
  virtual SegmentedDocument segment(std::string doc_id, std::string_view raw_text) const = 0;
};

class TextTilingSegmenter final : public Segmenter {
 public:
  TextTilingSegmenter(SegmenterOptions options, const Stopwords& stopwords)
      : options_(options), stopwords_(&stopwords) {}

  SegmentedDocument segment(std::string doc_id, std::string_view raw_text) const override;

  const SegmenterOptions& options() const { return options_; }

 private:
  SegmenterOptions options_;
  const Stopwords* stopwords_;
};

SegmentedDocument segment_document(std::string doc_id, std::string_view raw_text,
                                   const SegmenterOptions& options, const Stopwords& stopwords);

/// One pseudo-segment per term, in order; the word-to-word ablation input.
SegmentedDocument word_level_document(std::string doc_id, const std::vector<std::string>& terms);

}  // namespace tilebars
