#pragma once

#include <string>
#include <vector>

#include "tilebars/corpus.hpp"

namespace tilebars {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

/// Okapi BM25 with idf = ln((N - df + 0.5) / (df + 0.5) + 1). Document
/// length is the total term count of `doc`; the average comes from `stats`.
double bm25_score(const std::vector<std::string>& query_terms, const TermCounts& doc, const CorpusStats& stats,
                  const Bm25Params& params = {});

/// Dirichlet-smoothed query log-likelihood. Terms absent from the collection
/// are skipped and appended to `skipped` when given.
double lm_dirichlet_score(const std::vector<std::string>& query_terms, const TermCounts& doc,
                          const CorpusStats& stats, double mu = 2000.0, std::vector<std::string>* skipped = nullptr);

}  // namespace tilebars
