#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tilebars/common.hpp"
#include "tilebars/tokenizer.hpp"

namespace tilebars {

struct DocumentRecord {
  std::string doc_id;
  std::string text;
};

enum class CorpusFormat {
  kDirectory,  // one file per document, doc_id = file name without extension
  kTsv,        // doc_id TAB text, one document per line
};

CorpusFormat parse_corpus_format(std::string_view name);

/// Records in stable order: sorted file names for directories, file order
/// for TSV. Throws InputError on unreadable paths, malformed lines and
/// duplicate ids.
std::vector<DocumentRecord> load_corpus(const std::filesystem::path& path, CorpusFormat format);

/// Document count, per-term document and collection frequencies.
class CorpusStats {
 public:
  CorpusStats() = default;

  /// Adds one document's bag of terms.
  void add_document(const TermCounts& counts);

  /// Folds another shard's statistics into this one.
  void merge(const CorpusStats& other);

  std::int64_t document_count() const { return documents_; }
  std::int64_t total_terms() const { return total_terms_; }
  std::int64_t document_frequency(std::string_view term) const;
  std::int64_t collection_frequency(std::string_view term) const;
  double average_document_length() const;
  std::size_t vocabulary_size() const { return df_.size(); }

  /// ln((N + 1) / (df + 1)) + 1. Throws InvariantError on an empty corpus.
  double idf(std::string_view term) const;

  /// Sorted vocabulary.
  std::vector<std::string> vocabulary() const;

  void write(const std::filesystem::path& path) const;
  static CorpusStats read(const std::filesystem::path& path);

  bool operator==(const CorpusStats&) const = default;

 private:
  std::int64_t documents_ = 0;
  std::int64_t total_terms_ = 0;
  std::unordered_map<std::string, std::int64_t> df_;
  std::unordered_map<std::string, std::int64_t> cf_;
};

CorpusStats compute_stats(std::span<const TermCounts> documents);

/// Tokenizes each record with `stopwords` and accumulates its statistics.
CorpusStats compute_stats(std::span<const DocumentRecord> corpus, const Stopwords& stopwords);

/// Pre-trained word vectors.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  explicit EmbeddingStore(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }

  /// Null when the term has no vector.
  const std::vector<double>* find(std::string_view term) const;

  /// Throws InvariantError when the vector length differs from dim().
  void insert(std::string term, std::vector<double> vector);

 private:
  int dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

/// Textual word-vector format: an optional "count dim" header line, then
/// "word v1 ... vdim" per line. Headerless files take dim from the first
/// line.
EmbeddingStore load_embeddings(const std::filesystem::path& path);

struct Query {
  std::string query_id;
  std::vector<std::string> terms;
};

/// query_id TAB text per line; text goes through the document tokenizer.
std::vector<Query> parse_queries(const std::filesystem::path& path, const Stopwords& stopwords);

/// Longest query, at least 1. Used as the standardized query length.
int longest_query(std::span<const Query> queries);

/// Graded judgments keyed by query then document.
using QueryJudgments = std::map<std::string, int, std::less<>>;

class QrelSet {
 public:
  /// Throws InputError if the pair is already judged.
  void add(const std::string& query_id, const std::string& doc_id, int grade);

  /// Judgments for one query; empty when the query is unjudged.
  const QueryJudgments& judgments(std::string_view query_id) const;

  std::optional<int> grade(std::string_view query_id, std::string_view doc_id) const;

  std::vector<std::string> query_ids() const;
  std::size_t size() const;
  bool empty() const { return by_query_.empty(); }

  /// Largest positive grade over all judgments, 0 if none.
  int max_grade() const;

 private:
  std::map<std::string, QueryJudgments, std::less<>> by_query_;
};

/// Four whitespace-separated columns: query_id, iteration (ignored), doc_id,
/// integer grade.
QrelSet parse_qrels(const std::filesystem::path& path);

struct TrainingTriple {
  std::string query_id;
  std::string pos_doc_id;
  std::string neg_doc_id;

  bool operator==(const TrainingTriple&) const = default;
};

/// For each query, every pair with grade(pos) > 0 and grade(pos) >
/// grade(neg), subsampled uniformly without replacement to at most
/// `per_query_cap` pairs. Output keeps enumeration order.
std::vector<TrainingTriple> make_training_triples(const QrelSet& qrels, std::size_t per_query_cap,
                                                  std::uint64_t seed);

}  // namespace tilebars
