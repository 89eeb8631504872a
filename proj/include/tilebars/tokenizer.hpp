#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tilebars {

/// Set of normalized terms dropped by the tokenizer.
class Stopwords {
 public:
  Stopwords() = default;
  explicit Stopwords(std::unordered_set<std::string> terms) : terms_(std::move(terms)) {}

  bool contains(std::string_view term) const { return terms_.count(std::string(term)) > 0; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// One term per line, UTF-8. Blank lines and lines starting with '#' are
  /// ignored; entries are normalized like document text.
  static Stopwords load(const std::filesystem::path& path);

  /// Built-in English list, identical to resources/stopwords_en.txt.
  static const Stopwords& english();

 private:
  std::unordered_set<std::string> terms_;
};

struct TokenizedText {
  std::vector<std::string> terms;
  // Sorted term positions at which a new paragraph starts (a blank line
  // preceded it). Position p means the break falls between terms p-1 and p.
  std::vector<std::size_t> paragraph_breaks;
};

/// Lowercases (ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic),
/// splits on non-alphanumeric code points, drops stopwords and records
/// blank-line paragraph boundaries.
TokenizedText normalize_and_tokenize(std::string_view raw_text, const Stopwords& stopwords);

/// Tokenizes without paragraph bookkeeping.
std::vector<std::string> tokenize_terms(std::string_view raw_text, const Stopwords& stopwords);

}  // namespace tilebars
