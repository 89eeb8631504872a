#include "tilebars/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "tilebars/rng.hpp"

namespace tilebars {
namespace {

int gain_grade(const QueryJudgments& judged, const std::string& doc_id) {
  auto it = judged.find(doc_id);
  return it == judged.end() ? 0 : std::max(it->second, 0);
}

double dcg(const std::vector<int>& grades, int k) {
  double sum = 0.0;
  const int n = std::min(k, static_cast<int>(grades.size()));
  for (int i = 0; i < n; ++i) {
    sum += (std::exp2(grades[static_cast<std::size_t>(i)]) - 1.0) / std::log2(i + 2.0);
  }
  return sum;
}

void check_cutoff(int k) {
  if (k < 1) throw InvariantError("metric cutoff must be >= 1");
}

}  // namespace

Ranking make_ranking(std::string query_id, std::vector<ScoredDocument> scored) {
  std::unordered_set<std::string> seen;
  for (const auto& d : scored) {
    if (!seen.insert(d.doc_id).second) throw InvariantError("document " + d.doc_id + " ranked twice for " + query_id);
  }
  std::sort(scored.begin(), scored.end(), [](const ScoredDocument& a, const ScoredDocument& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
  return Ranking{std::move(query_id), std::move(scored)};
}

double precision_at_k(const Ranking& ranking, const QueryJudgments& judged, int k) {
  check_cutoff(k);
  int relevant = 0;
  const int n = std::min(k, static_cast<int>(ranking.documents.size()));
  for (int i = 0; i < n; ++i) {
    if (gain_grade(judged, ranking.documents[static_cast<std::size_t>(i)].doc_id) >= 1) ++relevant;
  }
  return static_cast<double>(relevant) / static_cast<double>(k);
}

double ndcg_at_k(const Ranking& ranking, const QueryJudgments& judged, int k) {
  check_cutoff(k);
  std::vector<int> ideal;
  for (const auto& [doc, grade] : judged) ideal.push_back(std::max(grade, 0));
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  const double ideal_dcg = dcg(ideal, k);
  if (ideal_dcg <= 0.0) return 0.0;
  std::vector<int> actual;
  const int n = std::min(k, static_cast<int>(ranking.documents.size()));
  for (int i = 0; i < n; ++i) actual.push_back(gain_grade(judged, ranking.documents[static_cast<std::size_t>(i)].doc_id));
  return dcg(actual, k) / ideal_dcg;
}

double err_at_k(const Ranking& ranking, const QueryJudgments& judged, int k, int max_grade) {
  check_cutoff(k);
  if (max_grade <= 0) return 0.0;
  const double scale = std::exp2(max_grade);
  double err = 0.0;
  double not_stopped = 1.0;
  const int n = std::min(k, static_cast<int>(ranking.documents.size()));
  for (int i = 0; i < n; ++i) {
    const int g = std::min(gain_grade(judged, ranking.documents[static_cast<std::size_t>(i)].doc_id), max_grade);
    const double r = (std::exp2(g) - 1.0) / scale;
    err += not_stopped * r / static_cast<double>(i + 1);
    not_stopped *= 1.0 - r;
  }
  return err;
}

int FoldSplit::fold_of(const std::string& query_id) const {
  for (std::size_t f = 0; f < folds.size(); ++f) {
    if (std::find(folds[f].begin(), folds[f].end(), query_id) != folds[f].end()) return static_cast<int>(f);
  }
  return -1;
}

FoldSplit kfold_split(std::vector<std::string> query_ids, int k, std::uint64_t seed) {
  if (k < 1) throw InvariantError("fold count must be >= 1");
  std::sort(query_ids.begin(), query_ids.end());
  if (std::adjacent_find(query_ids.begin(), query_ids.end()) != query_ids.end()) {
    throw InvariantError("duplicate query id in fold split");
  }
  Rng rng(seed);
  rng.shuffle(query_ids);
  FoldSplit split;
  split.folds.resize(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < query_ids.size(); ++i) {
    split.folds[i % static_cast<std::size_t>(k)].push_back(std::move(query_ids[i]));
  }
  for (auto& fold : split.folds) std::sort(fold.begin(), fold.end());
  return split;
}

}  // namespace tilebars
