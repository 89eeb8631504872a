#include <gtest/gtest.h>

#include <cmath>

#include "tilebars/baselines.hpp"

using namespace tilebars;

TEST(Bm25, OneDocumentCorpus) {
  const auto stats = compute_stats(std::vector<TermCounts>{{{"a", 1}}});
  EXPECT_NEAR(bm25_score({"a"}, {{"a", 1}}, stats), std::log(1.0 / 3.0 + 1.0), 1e-12);
  EXPECT_NEAR(bm25_score({"a"}, {{"a", 1}}, stats), 0.2877, 1e-4);
}

TEST(Bm25, AbsentTermContributesNothing) {
  const auto stats = compute_stats(std::vector<TermCounts>{{{"a", 1}}, {{"b", 2}}});
  EXPECT_DOUBLE_EQ(bm25_score({"b", "zzz"}, {{"a", 1}}, stats), 0.0);
}

TEST(Bm25, NoLengthNormalizationWithZeroB) {
  const auto stats = compute_stats(std::vector<TermCounts>{{{"a", 1}}, {{"b", 2}, {"c", 40}}});
  Bm25Params p;
  p.b = 0.0;
  EXPECT_DOUBLE_EQ(bm25_score({"a"}, {{"a", 2}}, stats, p), bm25_score({"a"}, {{"a", 2}, {"x", 100}}, stats, p));
  EXPECT_GT(bm25_score({"a"}, {{"a", 2}}, stats), bm25_score({"a"}, {{"a", 2}, {"x", 100}}, stats));
}

TEST(Bm25, MonotoneInTermFrequency) {
  const auto stats = compute_stats(std::vector<TermCounts>{{{"a", 1}}, {{"b", 2}}, {{"c", 1}}});
  double last = -1.0;
  for (int tf = 1; tf <= 10; ++tf) {
    const double s = bm25_score({"a"}, {{"a", tf}, {"b", 5}}, stats);
    EXPECT_GT(s, last);
    last = s;
  }
}

TEST(LmDirichlet, HandEvaluated) {
  const auto stats = compute_stats(std::vector<TermCounts>{{{"a", 1}, {"b", 1}}});
  EXPECT_NEAR(lm_dirichlet_score({"a"}, {{"a", 1}, {"b", 1}}, stats, 2.0), std::log(0.5), 1e-12);
}

TEST(LmDirichlet, UnsmoothedLimitAndAbsentTerm) {
  const auto stats = compute_stats(std::vector<TermCounts>{{{"a", 3}, {"b", 1}}, {{"c", 4}}});
  EXPECT_NEAR(lm_dirichlet_score({"a"}, {{"a", 3}, {"b", 1}}, stats, 0.0), std::log(0.75), 1e-12);
  const double mu = 2000;
  EXPECT_NEAR(lm_dirichlet_score({"c"}, {{"a", 3}, {"b", 1}}, stats, mu), std::log(mu * 0.5 / (4 + mu)), 1e-12);
}

TEST(LmDirichlet, SkipsUnknownTerms) {
  const auto stats = compute_stats(std::vector<TermCounts>{{{"a", 1}, {"b", 1}}});
  std::vector<std::string> skipped;
  const double with = lm_dirichlet_score({"a", "nope"}, {{"a", 1}, {"b", 1}}, stats, 2.0, &skipped);
  EXPECT_NEAR(with, std::log(0.5), 1e-12);
  EXPECT_EQ(skipped, (std::vector<std::string>{"nope"}));
}
