#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tilebars/corpus.hpp"
#include "tilebars/metrics.hpp"

namespace tilebars {

/// Six columns per line: "query_id Q0 doc_id rank score tag". Scores use the
/// shortest exact decimal form.
std::string format_run(const std::vector<Ranking>& rankings, const std::string& tag);
void write_run(const std::vector<Ranking>& rankings, const std::string& tag, const std::filesystem::path& path);

/// Rankings sorted by query id, documents in rank-column order.
std::vector<Ranking> read_run(const std::filesystem::path& path);

struct QueryMetrics {
  std::string query_id;
  std::map<int, double> precision;
  std::map<int, double> ndcg;
  std::map<int, double> err;
};

struct MetricMeans {
  std::size_t queries = 0;
  std::map<int, double> precision;
  std::map<int, double> ndcg;
  std::map<int, double> err;
};

struct MetricReport {
  std::vector<int> cutoffs;
  int max_grade = 0;
  std::vector<QueryMetrics> per_query;  // sorted by query id
  MetricMeans mean;
};

/// P, nDCG and ERR at every cutoff for each ranked query that has at least
/// one relevant judgment. Throws InvariantError on an empty ranking set.
MetricReport evaluate_run(const std::vector<Ranking>& rankings, const QrelSet& qrels, const std::vector<int>& cutoffs);

MetricMeans mean_over(const std::vector<QueryMetrics>& queries, const std::vector<int>& cutoffs);

/// Means restricted to each fold's queries, in fold order.
std::vector<MetricMeans> fold_means(const MetricReport& report, const FoldSplit& folds);

/// "metric<TAB>query<TAB>value" lines, then "all" means and optional
/// per-fold means.
std::string format_report(const MetricReport& report, const std::vector<MetricMeans>& folds = {});

}  // namespace tilebars
