#include "tilebars/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>

#include "tilebars/rng.hpp"

namespace tilebars {
namespace {

// Independent streams derived from the one user-facing seed.
constexpr std::uint64_t kSplitStream = 0x5D1C0FFEE1234567ULL;
constexpr std::uint64_t kOrderStream = 0x9E3779B97F4A7C15ULL;

double objective(const RankerModel& model, const InteractionMatrix& pos, const InteractionMatrix& neg,
                 ForwardTrace& pos_trace, ForwardTrace& neg_trace) {
  const double s_pos = forward(model, pos, pos_trace);
  const double s_neg = forward(model, neg, neg_trace);
  return pairwise_loss(s_pos, s_neg) + l2_penalty(model);
}

}  // namespace

void adam_step(std::span<double> params, std::span<const double> grad, AdamState& state, const Hyperparams& hp) {
  if (grad.size() != params.size()) throw InvariantError("gradient and parameter sizes differ");
  if (state.first_moment.size() != params.size()) {
    state.first_moment.assign(params.size(), 0.0);
    state.second_moment.assign(params.size(), 0.0);
    state.step = 0;
  }
  ++state.step;
  const double b1 = hp.adam_beta1;
  const double b2 = hp.adam_beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = b1 * m + (1.0 - b1) * g;
    v = b2 * v + (1.0 - b2) * g * g;
    const double m_hat = m / correction1;
    const double v_hat = v / correction2;
    params[i] -= hp.learning_rate * m_hat / (std::sqrt(v_hat) + hp.adam_epsilon);
  }
}

PairMetrics evaluate_pairs(const RankerModel& model, const std::vector<TrainingTriple>& triples,
                           const MatrixLookup& matrices) {
  PairMetrics metrics;
  if (triples.empty()) return metrics;
  std::size_t correct = 0;
  for (const auto& t : triples) {
    const double s_pos = score(model, matrices(t.query_id, t.pos_doc_id));
    const double s_neg = score(model, matrices(t.query_id, t.neg_doc_id));
    metrics.mean_loss += pairwise_loss(s_pos, s_neg);
    if (s_pos > s_neg) ++correct;
  }
  metrics.mean_loss /= static_cast<double>(triples.size());
  metrics.accuracy = static_cast<double>(correct) / static_cast<double>(triples.size());
  return metrics;
}

std::vector<std::string> validation_split(const std::vector<TrainingTriple>& triples, double fraction,
                                          std::uint64_t seed) {
  std::set<std::string> unique;
  for (const auto& t : triples) unique.insert(t.query_id);
  std::vector<std::string> ids(unique.begin(), unique.end());
  if (ids.size() < 2 || fraction <= 0.0) return {};
  auto count = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(ids.size())));
  count = std::min(count, ids.size() - 1);
  Rng rng(seed ^ kSplitStream);
  rng.shuffle(ids);
  ids.resize(count);
  std::sort(ids.begin(), ids.end());
  return ids;
}

TrainingResult train(const std::vector<TrainingTriple>& triples, const MatrixLookup& matrices, int n_q, int n_b,
                     const Hyperparams& hp) {
  RankerModel model(n_q, n_b, hp);
  model.initialize(hp);
  return train_from(std::move(model), triples, matrices);
}

TrainingResult train_from(RankerModel initial, const std::vector<TrainingTriple>& triples,
                          const MatrixLookup& matrices) {
  if (triples.empty()) throw DataError("no training triples");
  const Hyperparams hp = initial.hyperparams();

  TrainingResult result;
  result.validation_queries = validation_split(triples, hp.validation_fraction, hp.seed);
  const std::set<std::string> held_out(result.validation_queries.begin(), result.validation_queries.end());
  std::vector<TrainingTriple> train_set;
  std::vector<TrainingTriple> validation_set;
  for (const auto& t : triples) (held_out.count(t.query_id) ? validation_set : train_set).push_back(t);

  RankerModel model = std::move(initial);
  result.model = model;
  AdamState adam;
  Rng order_rng(hp.seed ^ kOrderStream);
  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  double best = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int epoch = 1; epoch <= hp.max_epochs; ++epoch) {
    order_rng.shuffle(order);
    for (std::size_t i : order) {
      const auto& t = train_set[i];
      const PairGradient g =
          gradients(model, matrices(t.query_id, t.pos_doc_id), matrices(t.query_id, t.neg_doc_id));
      adam_step(model.params(), g.grad, adam, hp);
    }

    EpochRecord record;
    record.epoch = epoch;
    const PairMetrics train_metrics = evaluate_pairs(model, train_set, matrices);
    record.train_loss = train_metrics.mean_loss;
    record.train_accuracy = train_metrics.accuracy;
    record.validation_loss =
        validation_set.empty() ? record.train_loss : evaluate_pairs(model, validation_set, matrices).mean_loss;
    record.improved = record.validation_loss < best;
    if (record.improved) {
      best = record.validation_loss;
      result.model = model;
      result.best_epoch = epoch;
      since_best = 0;
    } else {
      ++since_best;
    }
    result.history.push_back(record);
    if (since_best >= hp.patience) break;
  }
  if (result.best_epoch == 0) {
    // Every monitored loss was NaN; keep the final parameters.
    result.model = model;
    result.best_epoch = static_cast<int>(result.history.size());
  }
  return result;
}

InteractionMatrix random_matrix(int n_q, int n_b, std::uint64_t seed) {
  Rng rng(seed);
  InteractionMatrix m(n_q, n_b);
  for (int i = 0; i < n_q; ++i) {
    for (int j = 0; j < n_b; ++j) {
      const double tf = static_cast<double>(rng.below(4));
      const double idf = tf > 0.0 ? rng.uniform(0.5, 3.0) : 0.0;
      const double sim = tf > 0.0 ? 1.0 : rng.uniform();
      m.set_cell(i, j, {tf, idf, sim});
    }
  }
  return m;
}

GradCheckReport grad_check(const Hyperparams& base, const GradCheckOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Hyperparams hp = base;
  hp.max_kernel = 3;
  hp.filters = 2;
  hp.hidden = 2;
  constexpr int kNq = 3;
  constexpr int kNb = 8;

  RankerModel model(kNq, kNb, hp);
  model.initialize_uniform(options.seed, options.init_scale);
  const InteractionMatrix pos = random_matrix(kNq, kNb, options.seed + 1);
  const InteractionMatrix neg = random_matrix(kNq, kNb, options.seed + 2);

  const PairGradient analytic = gradients(model, pos, neg);
  GradCheckReport report;
  ForwardTrace pos_hi, neg_hi, pos_lo, neg_lo;
  auto params = model.params();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + options.epsilon;
    const double f_hi = objective(model, pos, neg, pos_hi, neg_hi);
    params[i] = saved - options.epsilon;
    const double f_lo = objective(model, pos, neg, pos_lo, neg_lo);
    params[i] = saved;

    if (activation_pattern(pos_hi, hp.hidden) != activation_pattern(pos_lo, hp.hidden) ||
        activation_pattern(neg_hi, hp.hidden) != activation_pattern(neg_lo, hp.hidden)) {
      ++report.skipped_at_kinks;
      continue;
    }
    const double numeric = (f_hi - f_lo) / (2.0 * options.epsilon);
    const double a = analytic.grad[i];
    const double abs_err = std::abs(a - numeric);
    const double rel_err = abs_err / std::max({std::abs(a), std::abs(numeric), options.denominator_floor});
    ++report.checked;
    report.max_absolute_error = std::max(report.max_absolute_error, abs_err);
    if (rel_err > report.max_relative_error || !std::isfinite(rel_err)) {
      report.max_relative_error = rel_err;
      report.worst_index = i;
      report.worst_tensor = model.layout().tensor_of(i).name;
    }
  }
  report.passed = report.checked > 0 && std::isfinite(report.max_relative_error) &&
                  report.max_relative_error < options.threshold;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace tilebars
