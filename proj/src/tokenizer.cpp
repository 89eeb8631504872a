#include "tilebars/tokenizer.hpp"

#include <fstream>

#include "tilebars/common.hpp"

namespace tilebars {
namespace {

constexpr std::string_view kEnglishStopwords[] = {
    "a",          "about",   "above",   "after",   "again",   "against",    "all",
    "am",         "an",      "and",     "any",     "are",     "as",         "at",
    "be",         "because", "been",    "before",  "being",   "below",      "between",
    "both",       "but",     "by",      "can",     "could",   "did",        "do",
    "does",       "doing",   "down",    "during",  "each",    "few",        "for",
    "from",       "further", "had",     "has",     "have",    "having",     "he",
    "her",        "here",    "hers",    "herself", "him",     "himself",    "his",
    "how",        "i",       "if",      "in",      "into",    "is",         "it",
    "its",        "itself",  "just",    "me",      "more",    "most",       "my",
    "myself",     "no",      "nor",     "not",     "now",     "of",         "off",
    "on",         "once",    "only",    "or",      "other",   "our",        "ours",
    "ourselves",  "out",     "over",    "own",     "same",    "she",        "should",
    "so",         "some",    "such",    "than",    "that",    "the",        "their",
    "theirs",     "them",    "themselves", "then", "there",   "these",      "they",
    "this",       "those",   "through", "to",      "too",     "under",      "until",
    "up",         "very",    "was",     "we",      "were",    "what",       "when",
    "where",      "which",   "while",   "who",     "whom",    "why",        "will",
    "with",       "would",   "you",     "your",    "yours",   "yourself",   "yourselves",
    "also",       "may",     "might",   "must",    "shall",   "upon",       "yet",
    "however",    "thus",    "therefore", "although", "another", "among",   "within",
    "without",    "whether", "either",  "neither", "every",   "much",       "many",
    "us",         "s",       "t",       "d",       "ll",      "m",          "re",
    "ve",         "don",     "isn",     "aren",    "wasn",    "weren",      "won",
    "wouldn",     "shouldn", "couldn",  "doesn",   "didn",    "hasn",       "haven",
    "hadn",       "ain",     "o",       "y",       "ma",      "mightn",     "mustn",
    "needn",      "shan",    "via",     "per",     "etc",     "ie",         "eg"};

// Decodes one UTF-8 code point starting at text[pos]; advances pos. Invalid
// sequences decode to U+FFFD and consume one byte.
char32_t decode_utf8(std::string_view text, std::size_t& pos) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  int extra = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++pos;
    return 0xFFFD;
  }
  if (pos + extra >= text.size()) {
    ++pos;
    return 0xFFFD;
  }
  for (int k = 1; k <= extra; ++k) {
    const unsigned char c = byte(pos + k);
    if ((c & 0xC0) != 0x80) {
      ++pos;
      return 0xFFFD;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  pos += extra + 1;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  }
  if (cp <= 0xBF) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
  if (cp >= 0xFF1A && cp <= 0xFF20) return false;
  if (cp >= 0xFF3B && cp <= 0xFF40) return false;
  if (cp >= 0xFF5B && cp <= 0xFF65) return false;
  if (cp == 0xFEFF || cp == 0xFFFD) return false;
  if (cp >= 0x1F000 && cp <= 0x1FAFF) return false;
  return true;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp < 0xC0) return cp;
  if (cp <= 0xDE) return cp == 0xD7 ? cp : cp + 32;
  if (cp >= 0x100 && cp <= 0x17F) {
    if (cp == 0x130) return 'i';
    if (cp == 0x178) return 0xFF;
    if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) {
      return (cp % 2 == 1) ? cp + 1 : cp;
    }
    if (cp == 0x138 || cp == 0x149 || cp == 0x17F) return cp;
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 32;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 32;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
  return cp;
}

bool is_space(char32_t cp) { return cp == ' ' || cp == '\t' || cp == '\r' || cp == '\f' || cp == '\v'; }

}  // namespace

Stopwords Stopwords::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read stopword list: " + path.string());
  std::unordered_set<std::string> terms;
  const Stopwords none;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (auto& term : tokenize_terms(line, none)) terms.insert(std::move(term));
  }
  return Stopwords(std::move(terms));
}

const Stopwords& Stopwords::english() {
  static const Stopwords list = [] {
    std::unordered_set<std::string> terms;
    for (auto word : kEnglishStopwords) terms.emplace(word);
    return Stopwords(std::move(terms));
  }();
  return list;
}

TokenizedText normalize_and_tokenize(std::string_view raw_text, const Stopwords& stopwords) {
  TokenizedText out;
  std::string current;
  bool pending_break = false;
  bool seen_newline = false;
  bool blank_since_newline = false;

  const auto flush = [&] {
    if (current.empty()) return;
    if (!stopwords.contains(current)) {
      if (pending_break && !out.terms.empty()) out.paragraph_breaks.push_back(out.terms.size());
      pending_break = false;
      out.terms.push_back(std::move(current));
    }
    current.clear();
    seen_newline = false;
  };

  std::size_t pos = 0;
  while (pos < raw_text.size()) {
    const char32_t cp = decode_utf8(raw_text, pos);
    if (is_word_char(cp)) {
      append_utf8(current, to_lower(cp));
      continue;
    }
    flush();
    if (cp == '\n') {
      if (seen_newline && blank_since_newline) pending_break = true;
      seen_newline = true;
      blank_since_newline = true;
    } else if (!is_space(cp)) {
      blank_since_newline = false;
    }
  }
  flush();
  return out;
}

std::vector<std::string> tokenize_terms(std::string_view raw_text, const Stopwords& stopwords) {
  return normalize_and_tokenize(raw_text, stopwords).terms;
}

}  // namespace tilebars
