#include "tilebars/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "tilebars/rng.hpp"

namespace tilebars {
namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

std::string where(const std::filesystem::path& path, std::size_t line_no) {
  return path.string() + ":" + std::to_string(line_no);
}

// id TAB text per non-blank line.
std::vector<std::pair<std::string, std::string>> read_id_tsv(const std::filesystem::path& path,
                                                             std::string_view what) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + std::string(what) + " file: " + path.string());
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(std::move(line));
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw InputError(where(path, line_no) + ": malformed " + std::string(what) + " line, expected id<TAB>text");
    }
    rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return rows;
}

}  // namespace

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "dir" || name == "directory") return CorpusFormat::kDirectory;
  if (name == "tsv") return CorpusFormat::kTsv;
  throw InputError("unknown corpus format '" + std::string(name) + "' (expected dir or tsv)");
}

std::vector<DocumentRecord> load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::vector<DocumentRecord> records;
  std::unordered_set<std::string> seen;
  const auto add = [&](std::string id, std::string text) {
    if (!seen.insert(id).second) throw InputError("duplicate document id '" + id + "' in " + path.string());
    records.push_back({std::move(id), std::move(text)});
  };

  if (format == CorpusFormat::kDirectory) {
    std::error_code ec;
    if (!std::filesystem::is_directory(path, ec)) throw InputError("corpus directory not found: " + path.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::ifstream in(file, std::ios::binary);
      if (!in) throw InputError("cannot read document: " + file.string());
      std::ostringstream text;
      text << in.rdbuf();
      add(file.stem().string(), text.str());
    }
    return records;
  }

  for (auto& [id, text] : read_id_tsv(path, "corpus")) add(std::move(id), std::move(text));
  return records;
}

void CorpusStats::add_document(const TermCounts& counts) {
  ++documents_;
  for (const auto& [term, count] : counts) {
    if (count <= 0) continue;
    ++df_[term];
    cf_[term] += count;
    total_terms_ += count;
  }
}

void CorpusStats::merge(const CorpusStats& other) {
  documents_ += other.documents_;
  total_terms_ += other.total_terms_;
  for (const auto& [term, df] : other.df_) df_[term] += df;
  for (const auto& [term, cf] : other.cf_) cf_[term] += cf;
}

std::int64_t CorpusStats::document_frequency(std::string_view term) const {
  auto it = df_.find(std::string(term));
  return it == df_.end() ? 0 : it->second;
}

std::int64_t CorpusStats::collection_frequency(std::string_view term) const {
  auto it = cf_.find(std::string(term));
  return it == cf_.end() ? 0 : it->second;
}

double CorpusStats::average_document_length() const {
  return documents_ == 0 ? 0.0 : static_cast<double>(total_terms_) / static_cast<double>(documents_);
}

double CorpusStats::idf(std::string_view term) const {
  if (documents_ == 0) throw InvariantError("idf is undefined for an empty corpus");
  const double n = static_cast<double>(documents_);
  const double df = static_cast<double>(document_frequency(term));
  return std::log((n + 1.0) / (df + 1.0)) + 1.0;
}

std::vector<std::string> CorpusStats::vocabulary() const {
  std::vector<std::string> terms;
  terms.reserve(df_.size());
  for (const auto& [term, df] : df_) terms.push_back(term);
  std::sort(terms.begin(), terms.end());
  return terms;
}

void CorpusStats::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write stats file: " + path.string());
  out << "tilebars-stats\t1\t" << documents_ << '\t' << total_terms_ << '\n';
  for (const auto& term : vocabulary()) {
    out << term << '\t' << df_.at(term) << '\t' << cf_.at(term) << '\n';
  }
}

CorpusStats CorpusStats::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read stats file: " + path.string());
  CorpusStats stats;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(std::move(line));
    const auto fields = split_whitespace(line);
    if (line_no == 1) {
      if (fields.size() != 4 || fields[0] != "tilebars-stats" || fields[1] != "1" ||
          !parse_number(fields[2], stats.documents_) || !parse_number(fields[3], stats.total_terms_)) {
        throw InputError(where(path, line_no) + ": not a version 1 stats file");
      }
      continue;
    }
    std::int64_t df = 0;
    std::int64_t cf = 0;
    if (fields.size() != 3 || !parse_number(fields[1], df) || !parse_number(fields[2], cf)) {
      throw InputError(where(path, line_no) + ": malformed stats line");
    }
    stats.df_[std::string(fields[0])] = df;
    stats.cf_[std::string(fields[0])] = cf;
  }
  if (line_no == 0) throw InputError("empty stats file: " + path.string());
  return stats;
}

CorpusStats compute_stats(std::span<const TermCounts> documents) {
  CorpusStats stats;
  for (const auto& doc : documents) stats.add_document(doc);
  return stats;
}

CorpusStats compute_stats(std::span<const DocumentRecord> corpus, const Stopwords& stopwords) {
  CorpusStats stats;
  for (const auto& record : corpus) {
    TermCounts counts;
    for (auto& term : tokenize_terms(record.text, stopwords)) ++counts[term];
    stats.add_document(counts);
  }
  return stats;
}

const std::vector<double>* EmbeddingStore::find(std::string_view term) const {
  auto it = vectors_.find(std::string(term));
  return it == vectors_.end() ? nullptr : &it->second;
}

void EmbeddingStore::insert(std::string term, std::vector<double> vector) {
  if (static_cast<int>(vector.size()) != dim_) {
    throw InvariantError("embedding for '" + term + "' has length " + std::to_string(vector.size()) +
                         ", expected " + std::to_string(dim_));
  }
  vectors_[std::move(term)] = std::move(vector);
}

EmbeddingStore load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read embeddings: " + path.string());
  EmbeddingStore store;
  bool first = true;
  long long declared_count = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(std::move(line));
    const auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    if (first) {
      first = false;
      long long count = 0;
      int dim = 0;
      if (fields.size() == 2 && parse_number(fields[0], count) && parse_number(fields[1], dim)) {
        if (dim <= 0) throw InputError(where(path, line_no) + ": embedding dimension must be positive");
        declared_count = count;
        store = EmbeddingStore(dim);
        continue;
      }
      if (fields.size() < 2) throw InputError(where(path, line_no) + ": embedding line has no components");
      store = EmbeddingStore(static_cast<int>(fields.size()) - 1);
    }
    if (static_cast<int>(fields.size()) - 1 != store.dim()) {
      throw InputError(where(path, line_no) + ": expected " + std::to_string(store.dim()) + " components, found " +
                       std::to_string(fields.size() - 1));
    }
    std::vector<double> vec(static_cast<std::size_t>(store.dim()));
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (!parse_number(fields[i], vec[i - 1]) || !std::isfinite(vec[i - 1])) {
        throw InputError(where(path, line_no) + ": non-numeric component '" + std::string(fields[i]) + "'");
      }
    }
    store.insert(std::string(fields[0]), std::move(vec));
  }
  if (store.dim() == 0) throw InputError("empty embedding file: " + path.string());
  if (declared_count >= 0 && static_cast<std::size_t>(declared_count) != store.size()) {
    warn("embedding header declares " + std::to_string(declared_count) + " words, file has " +
         std::to_string(store.size()));
  }
  return store;
}

std::vector<Query> parse_queries(const std::filesystem::path& path, const Stopwords& stopwords) {
  std::vector<Query> queries;
  std::unordered_set<std::string> seen;
  for (auto& [id, text] : read_id_tsv(path, "query")) {
    if (!seen.insert(id).second) throw InputError("duplicate query id '" + id + "' in " + path.string());
    Query q{id, tokenize_terms(text, stopwords)};
    if (q.terms.empty()) warn("query " + id + " is empty after stopword removal");
    queries.push_back(std::move(q));
  }
  return queries;
}

int longest_query(std::span<const Query> queries) {
  std::size_t longest = 1;
  for (const auto& q : queries) longest = std::max(longest, q.terms.size());
  return static_cast<int>(longest);
}

void QrelSet::add(const std::string& query_id, const std::string& doc_id, int grade) {
  auto& judged = by_query_[query_id];
  if (!judged.emplace(doc_id, grade).second) {
    throw InputError("duplicate judgment for query " + query_id + ", document " + doc_id);
  }
}

const QueryJudgments& QrelSet::judgments(std::string_view query_id) const {
  static const QueryJudgments kNone;
  auto it = by_query_.find(query_id);
  return it == by_query_.end() ? kNone : it->second;
}

std::optional<int> QrelSet::grade(std::string_view query_id, std::string_view doc_id) const {
  const auto& judged = judgments(query_id);
  auto it = judged.find(doc_id);
  if (it == judged.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> QrelSet::query_ids() const {
  std::vector<std::string> ids;
  for (const auto& [id, judged] : by_query_) ids.push_back(id);
  return ids;
}

std::size_t QrelSet::size() const {
  std::size_t n = 0;
  for (const auto& [id, judged] : by_query_) n += judged.size();
  return n;
}

int QrelSet::max_grade() const {
  int best = 0;
  for (const auto& [id, judged] : by_query_) {
    for (const auto& [doc, grade] : judged) best = std::max(best, grade);
  }
  return best;
}

QrelSet parse_qrels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read qrels: " + path.string());
  QrelSet qrels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(std::move(line));
    const auto fields = split_whitespace(line);
    if (fields.empty()) continue;
    int grade = 0;
    if (fields.size() != 4) {
      throw InputError(where(path, line_no) + ": expected 4 columns, found " + std::to_string(fields.size()));
    }
    if (!parse_number(fields[3], grade)) {
      throw InputError(where(path, line_no) + ": grade '" + std::string(fields[3]) + "' is not an integer");
    }
    qrels.add(std::string(fields[0]), std::string(fields[2]), grade);
  }
  return qrels;
}

std::vector<TrainingTriple> make_training_triples(const QrelSet& qrels, std::size_t per_query_cap,
                                                  std::uint64_t seed) {
  if (per_query_cap < 1) throw InvariantError("per-query triple cap must be >= 1");
  Rng rng(seed);
  std::vector<TrainingTriple> triples;
  for (const auto& query_id : qrels.query_ids()) {
    const auto& judged = qrels.judgments(query_id);
    std::vector<TrainingTriple> pairs;
    for (const auto& [pos, pos_grade] : judged) {
      if (pos_grade <= 0) continue;
      for (const auto& [neg, neg_grade] : judged) {
        if (pos_grade > neg_grade) pairs.push_back({query_id, pos, neg});
      }
    }
    if (pairs.size() > per_query_cap) {
      std::vector<std::size_t> order(pairs.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      // Partial Fisher-Yates picks a uniform subset of size cap.
      for (std::size_t i = 0; i < per_query_cap; ++i) {
        std::swap(order[i], order[i + rng.below(order.size() - i)]);
      }
      order.resize(per_query_cap);
      std::sort(order.begin(), order.end());
      std::vector<TrainingTriple> kept;
      kept.reserve(per_query_cap);
      for (auto i : order) kept.push_back(std::move(pairs[i]));
      pairs = std::move(kept);
    }
    for (auto& t : pairs) triples.push_back(std::move(t));
  }
  return triples;
}

}  // namespace tilebars
