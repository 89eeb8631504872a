#include "tilebars/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

namespace tilebars {
namespace {

TermCounts window_counts(const std::vector<TokenSequence>& sequences, int first, int last) {
  TermCounts counts;
  for (int s = first; s <= last; ++s) {
    for (const auto& term : sequences[static_cast<std::size_t>(s - 1)].terms) ++counts[term];
  }
  return counts;
}

double cosine(const TermCounts& a, const TermCounts& b) {
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (const auto& [term, count] : a) {
    norm_a += static_cast<double>(count) * static_cast<double>(count);
    if (auto it = b.find(term); it != b.end()) {
      dot += static_cast<double>(count) * static_cast<double>(it->second);
    }
  }
  for (const auto& [term, count] : b) norm_b += static_cast<double>(count) * static_cast<double>(count);
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  return std::clamp(dot / std::sqrt(norm_a * norm_b), 0.0, 1.0);
}

}  // namespace

std::vector<TokenSequence> build_token_sequences(const std::vector<std::string>& terms,
                                                 const std::vector<std::size_t>& paragraph_breaks,
                                                 int alpha, int paragraph_snap) {
  if (alpha < 2) throw InvariantError("token sequence length alpha must be >= 2");
  const std::size_t n = terms.size();
  const auto width = static_cast<std::size_t>(alpha);
  const auto snap = static_cast<std::size_t>(std::max(paragraph_snap, 0));

  std::vector<std::pair<std::size_t, std::size_t>> cuts;
  std::size_t start = 0;
  while (start < n) {
    const std::size_t nominal = start + width;
    std::size_t cut = n;
    if (nominal < n) {
      cut = nominal;
      const std::size_t lo = std::max(start + 1, nominal > snap ? nominal - snap : 0);
      const std::size_t hi = std::min(n - 1, nominal + snap);
      std::size_t best_distance = snap + 1;
      for (auto it = std::lower_bound(paragraph_breaks.begin(), paragraph_breaks.end(), lo);
           it != paragraph_breaks.end() && *it <= hi; ++it) {
        const std::size_t distance = *it > nominal ? *it - nominal : nominal - *it;
        if (distance < best_distance) {
          best_distance = distance;
          cut = *it;
        }
      }
    }
    cuts.emplace_back(start, cut);
    start = cut;
  }
  if (cuts.size() >= 2 && 2 * (cuts.back().second - cuts.back().first) < width) {
    const std::size_t end = cuts.back().second;
    cuts.pop_back();
    cuts.back().second = end;
  }

  std::vector<TokenSequence> sequences;
  sequences.reserve(cuts.size());
  for (const auto& [first, last] : cuts) {
    TokenSequence seq;
    seq.index = static_cast<int>(sequences.size()) + 1;
    seq.terms.assign(terms.begin() + static_cast<std::ptrdiff_t>(first),
                     terms.begin() + static_cast<std::ptrdiff_t>(last));
    sequences.push_back(std::move(seq));
  }
  return sequences;
}

double gap_similarity(const std::vector<TokenSequence>& sequences, int gap, int beta) {
  const int n = static_cast<int>(sequences.size());
  if (gap < 1 || gap > n - 1) {
    throw InvariantError("gap index " + std::to_string(gap) + " outside [1, " + std::to_string(n - 1) + "]");
  }
  if (beta < 1) throw InvariantError("similarity window beta must be >= 1");
  const TermCounts left = window_counts(sequences, std::max(1, gap - beta + 1), gap);
  const TermCounts right = window_counts(sequences, gap + 1, std::min(n, gap + beta));
  return cosine(left, right);
}

SimilarityCurve similarity_curve(const std::vector<TokenSequence>& sequences, int beta) {
  SimilarityCurve curve;
  curve.window = beta;
  const int n = static_cast<int>(sequences.size());
  for (int gap = 1; gap < n; ++gap) curve.gaps.push_back(gap_similarity(sequences, gap, beta));
  return curve;
}

SimilarityCurve smooth_curve(const SimilarityCurve& curve, int width) {
  if (width <= 0) return curve;
  SimilarityCurve out;
  out.window = curve.window;
  const int n = static_cast<int>(curve.gaps.size());
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - width);
    const int hi = std::min(n - 1, i + width);
    double sum = 0.0;
    for (int j = lo; j <= hi; ++j) sum += curve.gaps[static_cast<std::size_t>(j)];
    out.gaps.push_back(sum / (hi - lo + 1));
  }
  return out;
}

double depth_score(const SimilarityCurve& curve, int gap) {
  const auto& s = curve.gaps;
  const int n = static_cast<int>(s.size());
  if (gap < 1 || gap > n) throw InvariantError("depth requested for invalid gap " + std::to_string(gap));
  const auto at = [&](int i) { return s[static_cast<std::size_t>(i)]; };
  const int g = gap - 1;
  int left = g;
  while (left > 0 && at(left - 1) >= at(left)) --left;
  int right = g;
  while (right + 1 < n && at(right + 1) >= at(right)) ++right;
  return std::abs(at(left) - at(g)) + std::abs(at(right) - at(g));
}

std::vector<double> depth_scores(const SimilarityCurve& curve) {
  std::vector<double> depths;
  depths.reserve(curve.gaps.size());
  for (int gap = 1; gap <= static_cast<int>(curve.gaps.size()); ++gap) {
    depths.push_back(depth_score(curve, gap));
  }
  return depths;
}

std::set<int> find_boundaries(const std::vector<double>& depths) {
  return find_boundaries(depths, std::vector<bool>(depths.size(), true));
}

std::set<int> find_boundaries(const std::vector<double>& depths, const std::vector<bool>& candidates) {
  std::set<int> boundaries;
  if (depths.empty()) return boundaries;
  if (candidates.size() != depths.size()) throw InvariantError("candidate mask length must match depths");

  const double n = static_cast<double>(depths.size());
  const double mean = std::accumulate(depths.begin(), depths.end(), 0.0) / n;
  double variance = 0.0;
  for (double d : depths) variance += (d - mean) * (d - mean);
  const double threshold = mean - std::sqrt(variance / n) / 2.0;

  std::vector<int> passing;
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (candidates[i] && depths[i] > threshold) passing.push_back(static_cast<int>(i) + 1);
  }
  std::stable_sort(passing.begin(), passing.end(), [&](int a, int b) {
    return depths[static_cast<std::size_t>(a - 1)] > depths[static_cast<std::size_t>(b - 1)];
  });
  for (int gap : passing) {
    if (boundaries.count(gap - 1) == 0 && boundaries.count(gap + 1) == 0) boundaries.insert(gap);
  }
  return boundaries;
}

std::vector<bool> valley_candidates(const SimilarityCurve& curve, const std::vector<double>& depths) {
  const auto& s = curve.gaps;
  std::vector<bool> valley(s.size(), false);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool left_ok = i == 0 || s[i] <= s[i - 1];
    const bool right_ok = i + 1 == s.size() || s[i] <= s[i + 1];
    valley[i] = left_ok && right_ok && depths[i] > 0.0;
  }
  return valley;
}

SegmentedDocument assemble_segments(std::string doc_id, const std::vector<TokenSequence>& sequences,
                                    const std::set<int>& boundaries) {
  SegmentedDocument doc;
  doc.doc_id = std::move(doc_id);
  Segment current;
  for (const auto& seq : sequences) {
    if (current.first == 0) current.first = seq.index;
    current.last = seq.index;
    for (const auto& term : seq.terms) {
      ++current.term_counts[term];
      ++doc.total_term_counts[term];
    }
    if (boundaries.count(seq.index) > 0 || seq.index == static_cast<int>(sequences.size())) {
      current.index = static_cast<int>(doc.segments.size()) + 1;
      doc.segments.push_back(std::move(current));
      current = Segment{};
    }
  }
  return doc;
}

SegmentedDocument segment_document(std::string doc_id, std::string_view raw_text,
                                   const SegmenterOptions& options, const Stopwords& stopwords) {
  const TokenizedText tokens = normalize_and_tokenize(raw_text, stopwords);
  const auto sequences =
      build_token_sequences(tokens.terms, tokens.paragraph_breaks, options.alpha, options.paragraph_snap);
  if (sequences.size() < 2) return assemble_segments(std::move(doc_id), sequences, {});

  const SimilarityCurve curve = smooth_curve(similarity_curve(sequences, options.beta), options.smoothing_width);
  const std::vector<double> depths = depth_scores(curve);
  const std::set<int> boundaries = options.valleys_only
                                       ? find_boundaries(depths, valley_candidates(curve, depths))
                                       : find_boundaries(depths);
  return assemble_segments(std::move(doc_id), sequences, boundaries);
}

SegmentedDocument TextTilingSegmenter::segment(std::string doc_id, std::string_view raw_text) const {
  return segment_document(std::move(doc_id), raw_text, options_, *stopwords_);
}

SegmentedDocument word_level_document(std::string doc_id, const std::vector<std::string>& terms) {
  SegmentedDocument doc;
  doc.doc_id = std::move(doc_id);
  doc.segments.reserve(terms.size());
  for (const auto& term : terms) {
    Segment seg;
    seg.index = static_cast<int>(doc.segments.size()) + 1;
    seg.first = seg.last = seg.index;
    seg.term_counts[term] = 1;
    ++doc.total_term_counts[term];
    doc.segments.push_back(std::move(seg));
  }
  return doc;
}

}  // namespace tilebars
