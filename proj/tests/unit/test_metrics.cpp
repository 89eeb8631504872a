#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles/metric_oracle.hpp"
#include "tilebars/metrics.hpp"
#include "tilebars/rng.hpp"

using namespace tilebars;

namespace {

Ranking ranked(std::vector<std::string> ids) {
  Ranking r;
  r.query_id = "q";
  double s = static_cast<double>(ids.size());
  for (auto& id : ids) r.documents.push_back({std::move(id), s--});
  return r;
}

}  // namespace

TEST(MakeRanking, DescendingScoreTieByDocId) {
  const auto r = make_ranking("q", {{"b", 1.0}, {"a", 1.0}, {"c", 2.0}});
  EXPECT_EQ(r.documents[0].doc_id, "c");
  EXPECT_EQ(r.documents[1].doc_id, "a");
  EXPECT_EQ(r.documents[2].doc_id, "b");
  EXPECT_THROW(make_ranking("q", {{"a", 1.0}, {"a", 2.0}}), InvariantError);
}

TEST(Precision, Examples) {
  QueryJudgments judged;
  std::vector<std::string> ids;
  for (int i = 0; i < 20; ++i) {
    ids.push_back("d" + std::to_string(i));
    judged[ids.back()] = i % 2 == 0 ? 1 : 0;
  }
  EXPECT_DOUBLE_EQ(precision_at_k(ranked(ids), judged, 20), 0.5);
  EXPECT_DOUBLE_EQ(precision_at_k(ranked({"x", "y"}), judged, 2), 0.0);
  EXPECT_DOUBLE_EQ(precision_at_k(ranked({"d0"}), judged, 4), 0.25);
  judged["spam"] = -2;
  EXPECT_DOUBLE_EQ(precision_at_k(ranked({"spam"}), judged, 1), 0.0);
}

TEST(Ndcg, Examples) {
  const QueryJudgments judged{{"a", 1}, {"c", 2}};
  EXPECT_NEAR(ndcg_at_k(ranked({"a", "c"}), judged, 2), 0.7967, 1e-4);
  EXPECT_NEAR(ndcg_at_k(ranked({"a", "c"}), judged, 2),
              (1.0 + 3.0 / std::log2(3.0)) / (3.0 + 1.0 / std::log2(3.0)), 1e-12);
  EXPECT_DOUBLE_EQ(ndcg_at_k(ranked({"c", "a"}), judged, 2), 1.0);
  EXPECT_DOUBLE_EQ(ndcg_at_k(ranked({"a"}), QueryJudgments{{"a", 1}}, 1), 1.0);
  EXPECT_DOUBLE_EQ(ndcg_at_k(ranked({"a"}), QueryJudgments{{"a", 0}}, 1), 0.0);
}

TEST(Err, Examples) {
  EXPECT_DOUBLE_EQ(err_at_k(ranked({"a"}), QueryJudgments{{"a", 3}}, 1, 3), 0.875);
  EXPECT_DOUBLE_EQ(err_at_k(ranked({"a", "b"}), QueryJudgments{{"a", 1}, {"b", 1}}, 2, 1), 0.625);
  EXPECT_DOUBLE_EQ(err_at_k(ranked({"a", "b"}), QueryJudgments{{"a", 0}, {"b", 0}}, 2, 1), 0.0);
  EXPECT_DOUBLE_EQ(err_at_k(ranked({"a"}), QueryJudgments{{"a", 1}}, 1, 0), 0.0);
}

TEST(Metrics, AgreeWithBruteForceOracle) {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int pool = 1 + static_cast<int>(rng.below(30));
    std::vector<std::string> ids;
    QueryJudgments judged;
    oracle::Judged pairs;
    for (int i = 0; i < pool; ++i) {
      ids.push_back("d" + std::to_string(i));
      if (rng.uniform() < 0.7) {
        const int g = static_cast<int>(rng.below(5)) - 1;
        judged[ids.back()] = g;
        pairs.emplace_back(ids.back(), g);
      }
    }
    rng.shuffle(ids);
    ids.resize(1 + rng.below(ids.size()));
    const auto r = ranked(ids);
    for (int k : {1, 3, 5, 10, 20}) {
      EXPECT_NEAR(precision_at_k(r, judged, k), oracle::precision(ids, pairs, k), 1e-9);
      EXPECT_NEAR(ndcg_at_k(r, judged, k), oracle::ndcg(ids, pairs, k), 1e-9);
      EXPECT_NEAR(err_at_k(r, judged, k, 3), oracle::err(ids, pairs, k, 3), 1e-9);
    }
  }
}

TEST(Metrics, UnitIntervalAndMonotoneUnderSwap) {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> ids;
    QueryJudgments judged;
    for (int i = 0; i < 12; ++i) {
      ids.push_back("d" + std::to_string(i));
      judged[ids.back()] = static_cast<int>(rng.below(4));
    }
    rng.shuffle(ids);
    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
      if (judged[ids[i]] >= judged[ids[i + 1]]) continue;
      auto better = ids;
      std::swap(better[i], better[i + 1]);
      for (int k = static_cast<int>(i) + 2; k <= 12; ++k) {
        for (const auto* ids_ptr : {&ids, &better}) {
          const double n = ndcg_at_k(ranked(*ids_ptr), judged, k);
          EXPECT_GE(n, 0.0);
          EXPECT_LE(n, 1.0 + 1e-12);
        }
        EXPECT_GE(ndcg_at_k(ranked(better), judged, k), ndcg_at_k(ranked(ids), judged, k) - 1e-12);
        EXPECT_GE(err_at_k(ranked(better), judged, k, 3), err_at_k(ranked(ids), judged, k, 3) - 1e-12);
        EXPECT_GE(precision_at_k(ranked(better), judged, k), precision_at_k(ranked(ids), judged, k));
      }
    }
  }
}

TEST(KFold, BalancedDisjointDeterministic) {
  std::vector<std::string> seven;
  for (int i = 0; i < 7; ++i) seven.push_back("q" + std::to_string(i));
  const auto split = kfold_split(seven, 3, 1);
  std::multiset<std::size_t> sizes;
  for (const auto& f : split.folds) sizes.insert(f.size());
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{2, 2, 3}));

  std::vector<std::string> many;
  for (int i = 0; i < 150; ++i) many.push_back("q" + std::to_string(i));
  const auto ten = kfold_split(many, 10, 5);
  std::set<std::string> seen;
  for (const auto& f : ten.folds) {
    EXPECT_EQ(f.size(), 15u);
    for (const auto& q : f) EXPECT_TRUE(seen.insert(q).second);
  }
  EXPECT_EQ(seen.size(), 150u);
  EXPECT_EQ(kfold_split(many, 10, 5).folds, ten.folds);
  EXPECT_NE(kfold_split(many, 10, 6).folds, ten.folds);
  EXPECT_EQ(ten.fold_of(ten.folds[3][0]), 3);
  EXPECT_EQ(ten.fold_of("nope"), -1);
}

TEST(KFold, InvalidAndSparseSplits) {
  EXPECT_THROW(kfold_split({"a", "b"}, 0, 1), InvariantError);
  EXPECT_THROW(kfold_split({"a", "a"}, 2, 1), InvariantError);
  const auto sparse = kfold_split({"a", "b"}, 3, 1);
  EXPECT_EQ(sparse.folds.size(), 3u);
  EXPECT_EQ(sparse.folds[2].size(), 0u);
}
