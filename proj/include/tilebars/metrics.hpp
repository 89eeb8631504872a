#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tilebars/corpus.hpp"

namespace tilebars {

struct ScoredDocument {
  std::string doc_id;
  double score = 0.0;

  bool operator==(const ScoredDocument&) const = default;
};

/// Documents for one query by descending score, ties by ascending doc_id.
struct Ranking {
  std::string query_id;
  std::vector<ScoredDocument> documents;
};

/// Sorts into ranking order. Throws InvariantError on duplicate doc ids.
Ranking make_ranking(std::string query_id, std::vector<ScoredDocument> scored);

// Grades <= 0 are non-relevant; unjudged documents count as grade 0;
// positions past the end of a short ranking contribute nothing.

/// |{top-k with grade >= 1}| / k.
double precision_at_k(const Ranking& ranking, const QueryJudgments& judged, int k);

/// Exponential-gain DCG@k over the ideal DCG@k of all judged grades; 0 when
/// the query has no relevant document.
double ndcg_at_k(const Ranking& ranking, const QueryJudgments& judged, int k);

/// Cascade ERR@k with R = (2^g - 1) / 2^max_grade; 0 when max_grade <= 0.
double err_at_k(const Ranking& ranking, const QueryJudgments& judged, int k, int max_grade);

/// k disjoint query sets from a seeded shuffle dealt round-robin.
struct FoldSplit {
  std::vector<std::vector<std::string>> folds;

  /// 0-based fold holding `query_id`, or -1.
  int fold_of(const std::string& query_id) const;
};

FoldSplit kfold_split(std::vector<std::string> query_ids, int k, std::uint64_t seed);

}  // namespace tilebars
