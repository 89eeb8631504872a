#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "tilebars/synthetic.hpp"
#include "tilebars/training.hpp"

using namespace tilebars;

namespace {

struct PairData {
  std::vector<TrainingTriple> triples;
  std::map<std::string, InteractionMatrix> matrices;

  MatrixLookup lookup() const {
    return [this](const std::string&, const std::string& doc) -> const InteractionMatrix& {
      return matrices.at(doc);
    };
  }
};

PairData synthetic(int count, std::uint64_t seed) {
  const auto pairs = concentrated_vs_scattered(count, 3, 30, seed);
  PairData data;
  data.triples = pairs.triples;
  for (std::size_t i = 0; i < pairs.triples.size(); ++i) {
    data.matrices[pairs.triples[i].pos_doc_id] = pairs.positives[i];
    data.matrices[pairs.triples[i].neg_doc_id] = pairs.negatives[i];
  }
  return data;
}

Hyperparams fast_hp() {
  Hyperparams hp;
  hp.max_kernel = 3;
  hp.mlp_sizes = {8};
  hp.max_epochs = 5;
  return hp;
}

}  // namespace

TEST(Adam, ZeroGradientLeavesParameters) {
  std::vector<double> p{1.0, -2.0};
  const std::vector<double> g{0.0, 0.0};
  AdamState state;
  adam_step(p, g, state, Hyperparams{});
  EXPECT_EQ(p, (std::vector<double>{1.0, -2.0}));
  EXPECT_EQ(state.step, 1);
}

TEST(Adam, FirstStepIsLearningRateTimesSign) {
  Hyperparams hp;
  std::vector<double> p{0.0, 0.0, 0.0};
  const std::vector<double> g{3.0, -0.01, 250.0};
  AdamState state;
  adam_step(p, g, state, hp);
  EXPECT_NEAR(p[0], -hp.learning_rate, 1e-9);
  EXPECT_NEAR(p[1], hp.learning_rate, 1e-6);
  EXPECT_NEAR(p[2], -hp.learning_rate, 1e-9);
}

TEST(Adam, MomentsAccumulate) {
  Hyperparams hp;
  std::vector<double> p{0.0};
  AdamState state;
  adam_step(p, std::vector<double>{1.0}, state, hp);
  const double after_one = p[0];
  adam_step(p, std::vector<double>{1.0}, state, hp);
  EXPECT_NE(p[0], 2 * after_one + 1.0);
  EXPECT_LT(p[0], after_one);
  EXPECT_EQ(state.step, 2);
  EXPECT_GT(state.second_moment[0], 0.0);
}

TEST(Train, EmptyTriplesThrow) {
  const PairData data;
  EXPECT_THROW(train({}, data.lookup(), 3, 30, fast_hp()), DataError);
}

TEST(Train, PatienceZeroRunsOneEpoch) {
  auto hp = fast_hp();
  hp.patience = 0;
  const auto data = synthetic(6, 1);
  const auto result = train(data.triples, data.lookup(), 3, 30, hp);
  EXPECT_EQ(result.history.size(), 1u);
  EXPECT_EQ(result.best_epoch, 1);
}

TEST(Train, MaxEpochsBoundsHistory) {
  auto hp = fast_hp();
  hp.patience = 100;
  hp.max_epochs = 3;
  const auto data = synthetic(6, 2);
  const auto result = train(data.triples, data.lookup(), 3, 30, hp);
  EXPECT_EQ(result.history.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(result.history[static_cast<std::size_t>(i)].epoch, i + 1);
}

TEST(Train, SameSeedSameHistoryAndModel) {
  const auto data = synthetic(10, 3);
  const auto a = train(data.triples, data.lookup(), 3, 30, fast_hp());
  const auto b = train(data.triples, data.lookup(), 3, 30, fast_hp());
  EXPECT_EQ(a.history, b.history);
  EXPECT_EQ(a.model, b.model);
  auto other = fast_hp();
  other.seed = 99;
  EXPECT_NE(train(data.triples, data.lookup(), 3, 30, other).model, a.model);
}

TEST(Train, BestSnapshotMatchesRecordedLoss) {
  auto hp = fast_hp();
  hp.validation_fraction = 0.0;
  const auto data = synthetic(8, 4);
  const auto result = train(data.triples, data.lookup(), 3, 30, hp);
  const auto& best = result.history[static_cast<std::size_t>(result.best_epoch - 1)];
  EXPECT_TRUE(best.improved);
  EXPECT_NEAR(evaluate_pairs(result.model, data.triples, data.lookup()).mean_loss, best.train_loss, 1e-12);
  EXPECT_EQ(best.validation_loss, best.train_loss);
  EXPECT_TRUE(result.validation_queries.empty());
}

TEST(Train, LossDecreasesOnSeparablePairs) {
  auto hp = fast_hp();
  hp.max_epochs = 30;
  hp.patience = 30;
  hp.validation_fraction = 0.0;
  const auto data = synthetic(20, 5);
  const auto result = train(data.triples, data.lookup(), 3, 30, hp);
  EXPECT_LT(result.history.back().train_loss, result.history.front().train_loss);
  EXPECT_GT(result.history.back().train_accuracy, 0.9);
}

TEST(ValidationSplit, RoundedFractionLeavesTraining) {
  std::vector<TrainingTriple> triples;
  for (int q = 0; q < 10; ++q) triples.push_back({"q" + std::to_string(q), "a", "b"});
  EXPECT_EQ(validation_split(triples, 0.1, 1).size(), 1u);
  EXPECT_EQ(validation_split(triples, 0.25, 1).size(), 3u);
  EXPECT_EQ(validation_split(triples, 1.0, 1).size(), 9u);
  EXPECT_TRUE(validation_split(triples, 0.0, 1).empty());
  EXPECT_EQ(validation_split(triples, 0.3, 7), validation_split(triples, 0.3, 7));
  const std::vector<TrainingTriple> single{{"q", "a", "b"}, {"q", "c", "b"}};
  EXPECT_TRUE(validation_split(single, 0.5, 1).empty());
}

TEST(EvaluatePairs, AccuracyAndLoss) {
  const auto data = synthetic(4, 6);
  RankerModel model(3, 30, fast_hp());
  const auto m = evaluate_pairs(model, data.triples, data.lookup());
  EXPECT_NEAR(m.mean_loss, std::log(2.0), 1e-12);
  EXPECT_EQ(m.accuracy, 0.0);
}

TEST(GradCheck, DefaultConfigPasses) {
  const auto report = grad_check(Hyperparams::trec(), GradCheckOptions{});
  EXPECT_TRUE(report.passed);
  EXPECT_LT(report.max_relative_error, 1e-4);
  EXPECT_GT(report.checked, 0u);
  EXPECT_LT(report.skipped_at_kinks, report.checked / 10 + 1);
}

TEST(GradCheck, RepeatableAndDegradesWithLargeEpsilon) {
  const auto a = grad_check(Hyperparams::trec(), GradCheckOptions{});
  const auto b = grad_check(Hyperparams::trec(), GradCheckOptions{});
  EXPECT_EQ(a.max_relative_error, b.max_relative_error);
  EXPECT_EQ(a.worst_index, b.worst_index);
  GradCheckOptions coarse;
  coarse.epsilon = 1e-1;
  const auto c = grad_check(Hyperparams::trec(), coarse);
  EXPECT_TRUE(std::isfinite(c.max_relative_error));
  EXPECT_GT(c.max_relative_error, a.max_relative_error);
}

TEST(RandomMatrix, ChannelRanges) {
  const auto m = random_matrix(4, 12, 3);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 12; ++c) {
      const auto cell = m.cell(r, c);
      EXPECT_GE(cell[kTfChannel], 0.0);
      EXPECT_LE(cell[kTfChannel], 3.0);
      if (cell[kTfChannel] > 0) EXPECT_GT(cell[kIdfChannel], 0.0);
      EXPECT_GE(cell[kSimChannel], 0.0);
      EXPECT_LE(cell[kSimChannel], 1.0);
    }
  }
}
