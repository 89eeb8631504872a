#include <gtest/gtest.h>

#include "support.hpp"
#include "tilebars/evaluation.hpp"

using namespace tilebars;
using namespace testing_support;

namespace {

std::vector<Ranking> sample_rankings() {
  return {make_ranking("q2", {{"a", 0.5}, {"b", 0.25}, {"c", -1.0 / 3.0}}),
          make_ranking("q1", {{"x", 3.0}, {"y", 3.0}})};
}

QrelSet sample_qrels() {
  QrelSet q;
  q.add("q1", "y", 2);
  q.add("q1", "x", 0);
  q.add("q2", "b", 1);
  q.add("q3", "zz", 1);
  return q;
}

}  // namespace

TEST(RunFile, FormatIsSortedSixColumns) {
  const auto text = format_run(sample_rankings(), "tag1");
  EXPECT_EQ(text.substr(0, text.find('\n')), "q1 Q0 x 1 3 tag1");
  EXPECT_NE(text.find("q2 Q0 c 3 -0.3333333333333333 tag1\n"), std::string::npos);
}

TEST(RunFile, RoundTrip) {
  TempDir dir;
  const auto rankings = sample_rankings();
  write_run(rankings, "t", dir / "run.txt");
  const auto back = read_run(dir / "run.txt");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].query_id, "q1");
  EXPECT_EQ(back[1].documents, rankings[0].documents);
  EXPECT_EQ(format_run(back, "t"), read_file(dir / "run.txt"));
}

TEST(RunFile, RejectsMalformed) {
  TempDir dir;
  write_file(dir / "five.txt", "q1 Q0 a 1 0.5\n");
  EXPECT_THROW(read_run(dir / "five.txt"), InputError);
  write_file(dir / "dup.txt", "q1 Q0 a 1 0.5 t\nq1 Q0 a 2 0.4 t\n");
  EXPECT_THROW(read_run(dir / "dup.txt"), InputError);
  write_file(dir / "rank.txt", "q1 Q0 a one 0.5 t\n");
  EXPECT_THROW(read_run(dir / "rank.txt"), InputError);
  EXPECT_THROW(read_run(dir / "missing.txt"), InputError);
}

TEST(EvaluateRun, EmptyInputsThrow) {
  EXPECT_THROW(evaluate_run({}, sample_qrels(), {5}), InvariantError);
  EXPECT_THROW(evaluate_run(sample_rankings(), sample_qrels(), {}), InvariantError);
}

TEST(EvaluateRun, PerQueryAndMeans) {
  const auto report = evaluate_run(sample_rankings(), sample_qrels(), {1, 2});
  EXPECT_EQ(report.max_grade, 2);
  ASSERT_EQ(report.per_query.size(), 2u);
  EXPECT_EQ(report.per_query[0].query_id, "q1");
  EXPECT_DOUBLE_EQ(report.per_query[0].precision.at(1), 0.0);
  EXPECT_DOUBLE_EQ(report.per_query[0].precision.at(2), 0.5);
  EXPECT_DOUBLE_EQ(report.per_query[1].ndcg.at(2), 1.0 / std::log2(3.0));
  EXPECT_DOUBLE_EQ(report.mean.precision.at(2), 0.5);
  EXPECT_EQ(report.mean.queries, 2u);
}

TEST(EvaluateRun, SingleQueryMeanEqualsValue) {
  const std::vector<Ranking> one{make_ranking("q2", {{"b", 1.0}, {"a", 0.0}})};
  const auto report = evaluate_run(one, sample_qrels(), {1, 5});
  ASSERT_EQ(report.per_query.size(), 1u);
  for (int k : {1, 5}) {
    EXPECT_EQ(report.mean.ndcg.at(k), report.per_query[0].ndcg.at(k));
    EXPECT_EQ(report.mean.err.at(k), report.per_query[0].err.at(k));
  }
}

TEST(EvaluateRun, UnjudgedQueriesSkippedWithWarning) {
  WarningCapture warnings;
  const std::vector<Ranking> none{make_ranking("q9", {{"a", 1.0}})};
  const auto report = evaluate_run(none, sample_qrels(), {5});
  EXPECT_TRUE(report.per_query.empty());
  EXPECT_FALSE(warnings.messages.empty());
}

TEST(FormatReport, HeaderLinesAndFolds) {
  const auto report = evaluate_run(sample_rankings(), sample_qrels(), {2});
  FoldSplit folds;
  folds.folds = {{"q1"}, {"q2"}};
  const auto means = fold_means(report, folds);
  ASSERT_EQ(means.size(), 2u);
  EXPECT_EQ(means[0].queries, 1u);
  const auto text = format_report(report, means);
  EXPECT_EQ(text.rfind("# tilebars evaluation report\n", 0), 0u);
  EXPECT_NE(text.find("P@2\tq1\t0.5000\n"), std::string::npos);
  EXPECT_NE(text.find("P@2\tall\t0.5000\n"), std::string::npos);
  EXPECT_NE(text.find("fold2"), std::string::npos);
}
