#include <gtest/gtest.h>

#include "support.hpp"
#include "tilebars/tokenizer.hpp"

using namespace tilebars;
using testing_support::TempDir;

TEST(Tokenizer, DropsStopwordsAndPunctuation) {
  const Stopwords stop({"the"});
  const auto t = normalize_and_tokenize("The Tax Board. The board met.", stop);
  EXPECT_EQ(t.terms, (std::vector<std::string>{"tax", "board", "board", "met"}));
  EXPECT_TRUE(t.paragraph_breaks.empty());
}

TEST(Tokenizer, EmptyInput) {
  const auto t = normalize_and_tokenize("", Stopwords{});
  EXPECT_TRUE(t.terms.empty());
  EXPECT_TRUE(t.paragraph_breaks.empty());
}

TEST(Tokenizer, BlankLineRecordsParagraphBreak) {
  const auto t = normalize_and_tokenize("alpha beta\n\ngamma", Stopwords{});
  EXPECT_EQ(t.terms, (std::vector<std::string>{"alpha", "beta", "gamma"}));
  EXPECT_EQ(t.paragraph_breaks, (std::vector<std::size_t>{2}));
}

TEST(Tokenizer, SingleNewlineIsNotABreak) {
  const auto t = normalize_and_tokenize("alpha\nbeta\r\n\r\ngamma", Stopwords{});
  EXPECT_EQ(t.paragraph_breaks, (std::vector<std::size_t>{2}));
}

TEST(Tokenizer, LeadingAndTrailingBlankLinesAddNoBreak) {
  const auto t = normalize_and_tokenize("\n\nalpha beta\n\n\n", Stopwords{});
  EXPECT_EQ(t.terms.size(), 2u);
  EXPECT_TRUE(t.paragraph_breaks.empty());
}

TEST(Tokenizer, LowercasesBeyondAscii) {
  const auto t = tokenize_terms("Ärger ΣΟΦΙΑ Москва état", Stopwords{});
  EXPECT_EQ(t, (std::vector<std::string>{"ärger", "σοφια", "москва", "état"}));
}

TEST(Tokenizer, DigitsAreWordCharacters) {
  EXPECT_EQ(tokenize_terms("CS101 and tax-2010", Stopwords{}),
            (std::vector<std::string>{"cs101", "and", "tax", "2010"}));
}

TEST(Tokenizer, EnglishListMatchesResourceFile) {
  const Stopwords file = Stopwords::load(testing_support::source_dir() / "resources" / "stopwords_en.txt");
  const Stopwords& builtin = Stopwords::english();
  EXPECT_EQ(file.size(), builtin.size());
  for (const char* w : {"the", "a", "of", "and", "is", "was", "by", "that"}) {
    EXPECT_TRUE(file.contains(w)) << w;
    EXPECT_TRUE(builtin.contains(w)) << w;
  }
  EXPECT_FALSE(builtin.contains("tax"));
}

TEST(Tokenizer, StopwordFileNormalizesAndSkipsComments) {
  TempDir dir;
  testing_support::write_file(dir / "stop.txt", "# comment\nThe\n\nOF\n");
  const Stopwords s = Stopwords::load(dir / "stop.txt");
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains("the"));
  EXPECT_TRUE(s.contains("of"));
}

TEST(Tokenizer, MissingStopwordFileIsInputError) {
  try {
    Stopwords::load("/nonexistent/stop.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.exit_code(), 2);
  }
}
