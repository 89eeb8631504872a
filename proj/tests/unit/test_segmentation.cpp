#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles/similarity_oracle.hpp"
#include "tilebars/rng.hpp"
#include "tilebars/segmentation.hpp"
#include "tilebars/synthetic.hpp"

using namespace tilebars;

namespace {

std::vector<std::string> words(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<std::size_t> lengths(const std::vector<TokenSequence>& seqs) {
  std::vector<std::size_t> out;
  for (const auto& s : seqs) out.push_back(s.terms.size());
  return out;
}

TokenSequence seq(int index, std::vector<std::string> terms) { return TokenSequence{index, std::move(terms)}; }

SimilarityCurve curve(std::vector<double> gaps) { return SimilarityCurve{std::move(gaps), 6}; }

}  // namespace

TEST(TokenSequences, ExactMultiple) {
  EXPECT_EQ(lengths(build_token_sequences(words("w", 60), {}, 20)), (std::vector<std::size_t>{20, 20, 20}));
}

TEST(TokenSequences, ShortTailMergesBack) {
  EXPECT_EQ(lengths(build_token_sequences(words("w", 45), {}, 20)), (std::vector<std::size_t>{20, 25}));
}

TEST(TokenSequences, ParagraphSnapThenMerge) {
  EXPECT_EQ(lengths(build_token_sequences(words("w", 40), {18}, 20)), (std::vector<std::size_t>{18, 22}));
}

TEST(TokenSequences, BreakOutsideSnapWindowIsIgnored) {
  EXPECT_EQ(lengths(build_token_sequences(words("w", 60), {10}, 20)), (std::vector<std::size_t>{20, 20, 20}));
}

TEST(TokenSequences, IndicesAreOneBasedAndCoverEveryTerm) {
  const auto terms = words("w", 97);
  const auto seqs = build_token_sequences(terms, {13, 38, 61}, 20);
  std::vector<std::string> joined;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    EXPECT_EQ(seqs[i].index, static_cast<int>(i) + 1);
    joined.insert(joined.end(), seqs[i].terms.begin(), seqs[i].terms.end());
  }
  EXPECT_EQ(joined, terms);
}

TEST(TokenSequences, FewerTermsThanAlphaGiveOneSequence) {
  EXPECT_EQ(lengths(build_token_sequences(words("w", 7), {}, 20)), (std::vector<std::size_t>{7}));
  EXPECT_TRUE(build_token_sequences({}, {}, 20).empty());
}

TEST(TokenSequences, RejectsTinyAlpha) { EXPECT_THROW(build_token_sequences(words("w", 5), {}, 1), InvariantError); }

TEST(GapSimilarity, IdenticalWindows) {
  const std::vector<TokenSequence> s{seq(1, {"a", "b"}), seq(2, {"a", "b"})};
  EXPECT_DOUBLE_EQ(gap_similarity(s, 1, 6), 1.0);
}

TEST(GapSimilarity, DisjointWindows) {
  const std::vector<TokenSequence> s{seq(1, {"a", "b"}), seq(2, {"c", "d"})};
  EXPECT_DOUBLE_EQ(gap_similarity(s, 1, 6), 0.0);
}

TEST(GapSimilarity, HandEvaluatedCosine) {
  const std::vector<TokenSequence> s{seq(1, {"a", "a", "b"}), seq(2, {"a", "b"})};
  EXPECT_NEAR(gap_similarity(s, 1, 6), 3.0 / std::sqrt(10.0), 1e-12);
}

TEST(GapSimilarity, OutOfRangeGapThrows) {
  const std::vector<TokenSequence> s{seq(1, {"a"}), seq(2, {"b"})};
  EXPECT_THROW(gap_similarity(s, 0, 6), InvariantError);
  EXPECT_THROW(gap_similarity(s, 2, 6), InvariantError);
}

TEST(GapSimilarity, MatchesBruteForceOnRandomSequences) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TokenSequence> s;
    std::vector<std::vector<std::string>> raw;
    const int n = 2 + static_cast<int>(rng.below(12));
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> terms;
      const int len = 1 + static_cast<int>(rng.below(8));
      for (int j = 0; j < len; ++j) terms.push_back("t" + std::to_string(rng.below(6)));
      raw.push_back(terms);
      s.push_back(seq(i + 1, terms));
    }
    const int beta = 1 + static_cast<int>(rng.below(5));
    for (int gap = 1; gap < n; ++gap) {
      EXPECT_NEAR(gap_similarity(s, gap, beta), oracle::window_cosine(raw, gap, beta), 1e-12);
    }
  }
}

TEST(SimilarityCurve, Lengths) {
  EXPECT_EQ(similarity_curve({seq(1, {"a"}), seq(2, {"a"})}, 6).gaps.size(), 1u);
  std::vector<TokenSequence> six;
  for (int i = 1; i <= 6; ++i) six.push_back(seq(i, {"x", "y"}));
  const auto c = similarity_curve(six, 6);
  EXPECT_EQ(c.gaps, (std::vector<double>(5, 1.0)));
  EXPECT_TRUE(similarity_curve({seq(1, {"a"})}, 6).gaps.empty());
}

TEST(SimilarityCurve, TwoVocabularyMinimumAtSeam) {
  std::vector<TokenSequence> s;
  for (int i = 1; i <= 10; ++i) {
    const std::string p = i <= 5 ? "a" : "b";
    s.push_back(seq(i, {p + "1", p + "2", p + std::to_string(i % 3)}));
  }
  const auto c = similarity_curve(s, 3);
  const auto it = std::min_element(c.gaps.begin(), c.gaps.end());
  EXPECT_EQ(it - c.gaps.begin() + 1, 5);
}

TEST(SimilarityCurve, ValuesInUnitInterval) {
  Rng rng(5);
  std::vector<TokenSequence> s;
  for (int i = 1; i <= 30; ++i) {
    std::vector<std::string> t;
    for (int j = 0; j < 10; ++j) t.push_back("w" + std::to_string(rng.below(9)));
    s.push_back(seq(i, t));
  }
  for (double v : similarity_curve(s, 6).gaps) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(SmoothCurve, ZeroWidthIsIdentity) {
  const auto c = curve({0.1, 0.5, 0.2});
  EXPECT_EQ(smooth_curve(c, 0).gaps, c.gaps);
  const auto s = smooth_curve(c, 1);
  EXPECT_NEAR(s.gaps[0], 0.3, 1e-12);
  EXPECT_NEAR(s.gaps[1], 0.8 / 3.0, 1e-12);
}

TEST(DepthScore, FlatCurveIsZero) {
  for (double d : depth_scores(curve({0.4, 0.4, 0.4, 0.4}))) EXPECT_EQ(d, 0.0);
}

TEST(DepthScore, HandEvaluatedValley) { EXPECT_NEAR(depth_score(curve({0.9, 0.2, 0.8}), 2), 1.3, 1e-12); }

TEST(DepthScore, IncreasingCurveRisesToTheEnd) {
  const auto c = curve({0.1, 0.3, 0.5, 0.9});
  for (int gap = 1; gap <= 4; ++gap) EXPECT_NEAR(depth_score(c, gap), 0.9 - c.gaps[gap - 1], 1e-12);
}

TEST(DepthScore, NonNegativeEverywhere) {
  Rng rng(8);
  std::vector<double> g(40);
  for (auto& v : g) v = rng.uniform();
  for (double d : depth_scores(curve(g))) EXPECT_GE(d, 0.0);
}

TEST(FindBoundaries, EqualDepthsGiveNone) { EXPECT_TRUE(find_boundaries({0.3, 0.3, 0.3, 0.3}).empty()); }

TEST(FindBoundaries, HandEvaluatedThreshold) {
  EXPECT_EQ(find_boundaries({1.3, 0.1, 0.1, 0.1}), (std::set<int>{1}));
}

TEST(FindBoundaries, AdjacencyKeepsDeeper) { EXPECT_EQ(find_boundaries({0.9, 0.95, 0.0, 0.0}), (std::set<int>{2})); }

TEST(FindBoundaries, AdjacencyTieKeepsEarlier) {
  EXPECT_EQ(find_boundaries({0.9, 0.9, 0.0, 0.0, 0.0}), (std::set<int>{1}));
}

TEST(FindBoundaries, NeverAdjacent) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> d(30);
    for (auto& v : d) v = rng.uniform();
    const auto b = find_boundaries(d);
    for (int x : b) EXPECT_EQ(b.count(x + 1), 0u);
  }
}

TEST(FindBoundaries, CandidateMaskRestrictsChoice) {
  EXPECT_EQ(find_boundaries({1.3, 0.1, 0.1, 0.1}, {false, true, true, true}), (std::set<int>{}));
}

TEST(AssembleSegments, BoundaryAfterFifthSequence) {
  std::vector<TokenSequence> s;
  for (int i = 1; i <= 8; ++i) s.push_back(seq(i, {"w" + std::to_string(i)}));
  const auto doc = assemble_segments("d", s, {5});
  ASSERT_EQ(doc.segments.size(), 2u);
  EXPECT_EQ(doc.segments[0].first, 1);
  EXPECT_EQ(doc.segments[0].last, 5);
  EXPECT_EQ(doc.segments[1].first, 6);
  EXPECT_EQ(doc.segments[1].last, 8);
  EXPECT_EQ(doc.segments[1].index, 2);
}

TEST(SegmentDocument, ShortDocumentIsOneSegment) {
  const auto doc = segment_document("d", "just a few words here", SegmenterOptions{}, Stopwords{});
  ASSERT_EQ(doc.segments.size(), 1u);
  EXPECT_EQ(doc.total_term_counts.size(), 5u);
}

TEST(SegmentDocument, EmptyDocumentHasNoSegments) {
  const auto doc = segment_document("d", "", SegmenterOptions{}, Stopwords{});
  EXPECT_TRUE(doc.segments.empty());
  EXPECT_TRUE(doc.total_term_counts.empty());
}

TEST(SegmentDocument, TwoTopicDocumentSplitsAtSeam) {
  std::string text;
  for (int i = 0; i < 120; ++i) text += "alpha" + std::to_string(i % 20) + ' ';
  for (int i = 0; i < 120; ++i) text += "beta" + std::to_string(i % 20) + ' ';
  const auto doc = segment_document("d", text, SegmenterOptions{}, Stopwords{});
  ASSERT_EQ(doc.segments.size(), 2u);
  EXPECT_EQ(doc.segments[0].last, 6);
  EXPECT_EQ(doc.segments[1].last, 12);
}

TEST(SegmentDocument, GeneratedSeamsAreDetected) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto truth = topic_block_document(seed);
    const auto doc = segment_document("d", truth.text, SegmenterOptions{}, Stopwords{});
    for (int seam : truth.seams) {
      bool found = false;
      for (std::size_t i = 0; i + 1 < doc.segments.size(); ++i) {
        found = found || std::abs(doc.segments[i].last - seam) <= 1;
      }
      EXPECT_TRUE(found) << "seed " << seed << " seam " << seam;
    }
  }
}

TEST(SegmentDocument, SegmentsPartitionTheSequences) {
  const auto truth = topic_block_document(3);
  const auto doc = segment_document("d", truth.text, SegmenterOptions{}, Stopwords{});
  int expected_first = 1;
  TermCounts sum;
  for (const auto& s : doc.segments) {
    EXPECT_EQ(s.first, expected_first);
    EXPECT_GE(s.last, s.first);
    expected_first = s.last + 1;
    add_counts(sum, s.term_counts);
  }
  EXPECT_EQ(expected_first - 1, std::accumulate(truth.block_lengths.begin(), truth.block_lengths.end(), 0));
  EXPECT_EQ(sum, doc.total_term_counts);
}

TEST(SegmentDocument, Deterministic) {
  const auto truth = topic_block_document(4);
  const TextTilingSegmenter seg(SegmenterOptions{}, Stopwords::english());
  EXPECT_EQ(seg.segment("d", truth.text), seg.segment("d", truth.text));
}

TEST(WordLevelDocument, OnePseudoSegmentPerTerm) {
  const auto doc = word_level_document("d", {"a", "b", "a"});
  ASSERT_EQ(doc.segments.size(), 3u);
  EXPECT_EQ(doc.segments[2].term_counts.at("a"), 1);
  EXPECT_EQ(doc.total_term_counts.at("a"), 2);
}
