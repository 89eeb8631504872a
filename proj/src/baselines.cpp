#include "tilebars/baselines.hpp"

#include <cmath>

namespace tilebars {

double bm25_score(const std::vector<std::string>& query_terms, const TermCounts& doc, const CorpusStats& stats,
                  const Bm25Params& params) {
  const double n = static_cast<double>(stats.document_count());
  const double avg = stats.average_document_length();
  const double length = static_cast<double>(total_count(doc));
  const double norm = avg > 0.0 ? 1.0 - params.b + params.b * length / avg : 1.0;
  double score = 0.0;
  for (const auto& term : query_terms) {
    auto it = doc.find(term);
    if (it == doc.end() || it->second <= 0) continue;
    const double tf = static_cast<double>(it->second);
    const double df = static_cast<double>(stats.document_frequency(term));
    const double idf = std::log((n - df + 0.5) / (df + 0.5) + 1.0);
    score += idf * tf * (params.k1 + 1.0) / (tf + params.k1 * norm);
  }
  return score;
}

double lm_dirichlet_score(const std::vector<std::string>& query_terms, const TermCounts& doc,
                          const CorpusStats& stats, double mu, std::vector<std::string>* skipped) {
  const double collection_length = static_cast<double>(stats.total_terms());
  const double length = static_cast<double>(total_count(doc));
  double score = 0.0;
  for (const auto& term : query_terms) {
    const double cf = static_cast<double>(stats.collection_frequency(term));
    if (cf <= 0.0 || collection_length <= 0.0) {
      if (skipped) skipped->push_back(term);
      continue;
    }
    auto it = doc.find(term);
    const double tf = it == doc.end() ? 0.0 : static_cast<double>(it->second);
    score += std::log((tf + mu * cf / collection_length) / (length + mu));
  }
  return score;
}

}  // namespace tilebars
