#include "tilebars/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "tilebars/checkpoint.hpp"

namespace tilebars {
namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

void append_means(std::ostringstream& out, const MetricMeans& means, const std::vector<int>& cutoffs,
                  const std::string& label) {
  for (int k : cutoffs) out << "P@" << k << '\t' << label << '\t' << fixed4(means.precision.at(k)) << '\n';
  for (int k : cutoffs) out << "nDCG@" << k << '\t' << label << '\t' << fixed4(means.ndcg.at(k)) << '\n';
  for (int k : cutoffs) out << "ERR@" << k << '\t' << label << '\t' << fixed4(means.err.at(k)) << '\n';
}

}  // namespace

std::string format_run(const std::vector<Ranking>& rankings, const std::string& tag) {
  std::vector<const Ranking*> ordered;
  for (const auto& r : rankings) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const Ranking* a, const Ranking* b) { return a->query_id < b->query_id; });
  std::ostringstream out;
  for (const Ranking* r : ordered) {
    int rank = 0;
    for (const auto& d : r->documents) {
      out << r->query_id << " Q0 " << d.doc_id << ' ' << ++rank << ' ' << format_real(d.score) << ' ' << tag << '\n';
    }
  }
  return out.str();
}

void write_run(const std::vector<Ranking>& rankings, const std::string& tag, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write run file: " + path.string());
  out << format_run(rankings, tag);
}

std::vector<Ranking> read_run(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read run file: " + path.string());
  std::map<std::string, std::vector<std::pair<long, ScoredDocument>>> by_query;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string qid, q0, doc, rank_text, score_text, tag, extra;
    if (!(fields >> qid)) continue;
    if (!(fields >> q0 >> doc >> rank_text >> score_text >> tag) || (fields >> extra)) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected 6 columns");
    }
    long rank = 0;
    double score = 0.0;
    auto r1 = std::from_chars(rank_text.data(), rank_text.data() + rank_text.size(), rank);
    auto r2 = std::from_chars(score_text.data(), score_text.data() + score_text.size(), score);
    if (r1.ec != std::errc() || r2.ec != std::errc()) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": bad rank or score");
    }
    by_query[qid].push_back({rank, {doc, score}});
  }
  std::vector<Ranking> rankings;
  for (auto& [qid, docs] : by_query) {
    std::stable_sort(docs.begin(), docs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Ranking r{qid, {}};
    std::set<std::string> seen;
    for (auto& [rank, d] : docs) {
      if (!seen.insert(d.doc_id).second) {
        throw InputError(path.string() + ": document " + d.doc_id + " appears twice for query " + qid);
      }
      r.documents.push_back(std::move(d));
    }
    rankings.push_back(std::move(r));
  }
  return rankings;
}

MetricMeans mean_over(const std::vector<QueryMetrics>& queries, const std::vector<int>& cutoffs) {
  MetricMeans means;
  means.queries = queries.size();
  for (int k : cutoffs) {
    double p = 0.0, n = 0.0, e = 0.0;
    for (const auto& q : queries) {
      p += q.precision.at(k);
      n += q.ndcg.at(k);
      e += q.err.at(k);
    }
    const double count = queries.empty() ? 1.0 : static_cast<double>(queries.size());
    means.precision[k] = p / count;
    means.ndcg[k] = n / count;
    means.err[k] = e / count;
  }
  return means;
}

MetricReport evaluate_run(const std::vector<Ranking>& rankings, const QrelSet& qrels, const std::vector<int>& cutoffs) {
  if (rankings.empty()) throw InvariantError("no rankings to evaluate");
  if (cutoffs.empty()) throw InvariantError("no metric cutoffs given");
  MetricReport report;
  report.cutoffs = cutoffs;
  report.max_grade = qrels.max_grade();
  for (const auto& ranking : rankings) {
    const auto& judged = qrels.judgments(ranking.query_id);
    const bool has_relevant =
        std::any_of(judged.begin(), judged.end(), [](const auto& entry) { return entry.second > 0; });
    if (!has_relevant) continue;
    QueryMetrics q;
    q.query_id = ranking.query_id;
    for (int k : cutoffs) {
      q.precision[k] = precision_at_k(ranking, judged, k);
      q.ndcg[k] = ndcg_at_k(ranking, judged, k);
      q.err[k] = err_at_k(ranking, judged, k, report.max_grade);
    }
    report.per_query.push_back(std::move(q));
  }
  std::sort(report.per_query.begin(), report.per_query.end(),
            [](const QueryMetrics& a, const QueryMetrics& b) { return a.query_id < b.query_id; });
  if (report.per_query.empty()) warn("no ranked query has a relevant judgment");
  report.mean = mean_over(report.per_query, cutoffs);
  return report;
}

std::vector<MetricMeans> fold_means(const MetricReport& report, const FoldSplit& folds) {
  std::vector<MetricMeans> out;
  for (const auto& fold : folds.folds) {
    std::vector<QueryMetrics> members;
    for (const auto& q : report.per_query) {
      if (std::find(fold.begin(), fold.end(), q.query_id) != fold.end()) members.push_back(q);
    }
    out.push_back(mean_over(members, report.cutoffs));
  }
  return out;
}

std::string format_report(const MetricReport& report, const std::vector<MetricMeans>& folds) {
  std::ostringstream out;
  out << "# tilebars evaluation report\n";
  out << "# gain=exponential err_max_grade=" << report.max_grade << " queries=" << report.mean.queries << '\n';
  for (const auto& q : report.per_query) {
    for (int k : report.cutoffs) out << "P@" << k << '\t' << q.query_id << '\t' << fixed4(q.precision.at(k)) << '\n';
    for (int k : report.cutoffs) out << "nDCG@" << k << '\t' << q.query_id << '\t' << fixed4(q.ndcg.at(k)) << '\n';
    for (int k : report.cutoffs) out << "ERR@" << k << '\t' << q.query_id << '\t' << fixed4(q.err.at(k)) << '\n';
  }
  append_means(out, report.mean, report.cutoffs, "all");
  for (std::size_t f = 0; f < folds.size(); ++f) {
    append_means(out, folds[f], report.cutoffs, "fold" + std::to_string(f + 1));
  }
  return out.str();
}

}  // namespace tilebars
