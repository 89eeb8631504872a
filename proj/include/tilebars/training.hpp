#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tilebars/corpus.hpp"
#include "tilebars/ranker.hpp"

namespace tilebars {

struct AdamState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  long step = 0;
};

/// One bias-corrected Adam update of `params` in place.
void adam_step(std::span<double> params, std::span<const double> grad, AdamState& state, const Hyperparams& hp);

using MatrixLookup = std::function<const InteractionMatrix&(const std::string& query_id, const std::string& doc_id)>;

struct EpochRecord {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;        // mean pairwise loss after the epoch
  double validation_loss = 0.0;   // mean over validation triples, or train_loss if there are none
  double train_accuracy = 0.0;    // fraction of training triples with s+ > s-
  bool improved = false;

  bool operator==(const EpochRecord&) const = default;
};

struct TrainingResult {
  RankerModel model;  // best-validation snapshot
  std::vector<EpochRecord> history;
  int best_epoch = 0;
  std::vector<std::string> validation_queries;
};

/// Pairwise SGD with Adam, one triple per step, shuffled every epoch.
/// A seeded fraction of the training queries is held out for early
/// stopping; with none held out the training loss is monitored instead.
/// Stops after `patience` epochs without improvement or at max_epochs.
/// Throws DataError when `triples` is empty.
TrainingResult train(const std::vector<TrainingTriple>& triples, const MatrixLookup& matrices, int n_q, int n_b,
                     const Hyperparams& hp);

/// Continues from `initial` (its hyperparameters control the run).
TrainingResult train_from(RankerModel initial, const std::vector<TrainingTriple>& triples,
                          const MatrixLookup& matrices);

struct PairMetrics {
  double mean_loss = 0.0;
  double accuracy = 0.0;
};

PairMetrics evaluate_pairs(const RankerModel& model, const std::vector<TrainingTriple>& triples,
                           const MatrixLookup& matrices);

/// Queries held out for validation: round(fraction * count) of the sorted
/// unique ids after a seeded shuffle, always leaving one for training.
std::vector<std::string> validation_split(const std::vector<TrainingTriple>& triples, double fraction,
                                          std::uint64_t seed);

struct GradCheckOptions {
  double epsilon = 1e-5;
  std::uint64_t seed = 7;
  double threshold = 1e-4;
  // Parameters are drawn from a wider range than training init so that
  // hard-sigmoid saturation and dead ReLUs are exercised.
  double init_scale = 0.5;
  // Relative error is |a - n| / max(|a|, |n|, floor).
  double denominator_floor = 1e-6;
};

struct GradCheckReport {
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
  std::string worst_tensor;
  std::size_t worst_index = 0;
  std::size_t checked = 0;
  std::size_t skipped_at_kinks = 0;
  double seconds = 0.0;
  bool passed = false;
};

/// Finite-difference check of gradients() on a small random model
/// (l=3, F=2, H=2, n_q=3, n_b=8, MLP sizes from `base`) and a random pair
/// of matrices. Parameters whose central difference straddles an
/// activation kink are skipped.
GradCheckReport grad_check(const Hyperparams& base, const GradCheckOptions& options);

/// Random matrix with plausible channel values: tf in 0..3, idf > 0 where
/// tf > 0, similarity in [0, 1].
InteractionMatrix random_matrix(int n_q, int n_b, std::uint64_t seed);

}  // namespace tilebars
