#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tilebars/interaction.hpp"

namespace tilebars {

/// Architecture and optimization settings of the segment ranker.
struct Hyperparams {
  int max_kernel = 10;  // l: kernel widths 1..l
  int filters = 3;      // F per kernel width
  int hidden = 3;       // H units per LSTM
  std::vector<int> mlp_sizes = {32, 16};
  double learning_rate = 1e-3;
  double l2_coefficient = 1e-4;  // applied to CNN kernels only
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  int patience = 5;
  int max_epochs = 100;
  std::uint64_t seed = 1;
  double init_scale = 0.1;            // uniform in [-scale, scale]
  double forget_bias = 1.0;           // added to every forget-gate bias after init
  double validation_fraction = 0.1;   // of training queries

  /// F = H = 3, MLP 32-16.
  static Hyperparams trec();
  /// F = H = 9, MLP 128-16.
  static Hyperparams letor();

  /// Throws InvariantError when a field is out of range.
  void validate() const;

  bool operator==(const Hyperparams&) const = default;
};

struct TensorInfo {
  std::string name;
  std::vector<int> shape;
  std::size_t offset = 0;
  std::size_t size = 0;
};

/// Placement of every learnable tensor inside one flat parameter vector.
/// Per kernel width k = 1..l:
///   cnn.k.kernel  [F][n_q][k][3]     cnn.k.bias      [F]
///   lstm.k.gates  [4][H][F + H]      lstm.k.gate_bias [4][H]
/// with gate order forget, input, output, candidate; then per MLP layer m:
///   mlp.m.weight  [out][in]          mlp.m.bias      [out]
class ParamLayout {
 public:
  ParamLayout() = default;
  ParamLayout(int n_q, int n_b, const Hyperparams& hp);

  std::size_t size() const { return size_; }
  const std::vector<TensorInfo>& tensors() const { return tensors_; }

  std::size_t cnn_kernel(int k) const { return cnn_kernel_[static_cast<std::size_t>(k - 1)]; }
  std::size_t cnn_bias(int k) const { return cnn_bias_[static_cast<std::size_t>(k - 1)]; }
  std::size_t lstm_gates(int k) const { return lstm_gates_[static_cast<std::size_t>(k - 1)]; }
  std::size_t lstm_bias(int k) const { return lstm_bias_[static_cast<std::size_t>(k - 1)]; }
  std::size_t mlp_weight(int layer) const { return mlp_weight_[static_cast<std::size_t>(layer)]; }
  std::size_t mlp_bias(int layer) const { return mlp_bias_[static_cast<std::size_t>(layer)]; }

  /// Layer widths: l * H, mlp_sizes..., 1.
  const std::vector<int>& mlp_widths() const { return mlp_widths_; }

  /// Name and flat offset of the tensor holding parameter `index`.
  const TensorInfo& tensor_of(std::size_t index) const;

 private:
  std::size_t add(std::string name, std::vector<int> shape);

  std::size_t size_ = 0;
  std::vector<TensorInfo> tensors_;
  std::vector<std::size_t> cnn_kernel_, cnn_bias_, lstm_gates_, lstm_bias_, mlp_weight_, mlp_bias_;
  std::vector<int> mlp_widths_;
};

/// All learnable parameters plus the configuration that shaped them.
class RankerModel {
 public:
  RankerModel() = default;
  /// Zero-initialized model for n_q x n_b matrices.
  RankerModel(int n_q, int n_b, Hyperparams hp);

  int n_q() const { return n_q_; }
  int n_b() const { return n_b_; }
  const Hyperparams& hyperparams() const { return hp_; }
  const ParamLayout& layout() const { return layout_; }

  std::span<const double> params() const { return params_; }
  std::span<double> params() { return params_; }

  std::span<double> tensor(std::size_t offset, std::size_t size) { return params().subspan(offset, size); }
  std::span<double> cnn_kernel(int k);
  std::span<double> cnn_bias(int k);
  std::span<double> lstm_gates(int k);
  std::span<double> lstm_bias(int k);
  std::span<double> mlp_weight(int layer);
  std::span<double> mlp_bias(int layer);

  /// Uniform in [-scale, scale] for every parameter.
  void initialize_uniform(std::uint64_t seed, double scale);

  /// initialize_uniform(seed, init_scale), then forget_bias added to the
  /// forget-gate biases.
  void initialize(const Hyperparams& hp);

  bool operator==(const RankerModel& other) const {
    return n_q_ == other.n_q_ && n_b_ == other.n_b_ && hp_ == other.hp_ && params_ == other.params_;
  }

 private:
  int n_q_ = 0;
  int n_b_ = 0;
  Hyperparams hp_;
  ParamLayout layout_;
  std::vector<double> params_;
};

/// Gradient with the same layout as RankerModel::params().
using ParamGradient = std::vector<double>;

/// CNN output for one kernel width: steps x filters, ReLU applied.
struct Tape {
  int k = 0;
  int steps = 0;
  int filters = 0;
  std::vector<double> values;  // row-major [step][filter]

  double at(int step, int filter) const {
    return values[static_cast<std::size_t>(step) * static_cast<std::size_t>(filters) + static_cast<std::size_t>(filter)];
  }
};

/// clamp(0.2 x + 0.5, 0, 1).
double hard_sigmoid(double x);

/// Intermediate values of one forward pass, kept for backpropagation.
struct KernelTrace {
  int k = 0;
  int steps = 0;
  std::vector<double> conv_pre;  // [step][F]
  Tape tape;
  std::vector<double> gate_pre;  // [step][4][H]
  std::vector<double> gate_out;  // [step][4][H]; hard sigmoid for f, i, o, tanh for candidate
  std::vector<double> cell;      // [step + 1][H], row 0 = initial state
  std::vector<double> cell_tanh; // [step][H]
  std::vector<double> hidden;    // [step + 1][H], row 0 = initial state
};

struct ForwardTrace {
  std::vector<KernelTrace> kernels;
  std::vector<std::vector<double>> mlp_pre;  // per layer
  std::vector<std::vector<double>> mlp_in;   // per layer input; mlp_in[0] is the LSTM concat
  double score = 0.0;
};

/// Stride-1, unpadded full-height correlation with each width-k filter,
/// followed by ReLU. Throws InvariantError when k is outside 1..min(l, n_b).
Tape cnn_forward(const RankerModel& model, const InteractionMatrix& matrix, int k);

/// LSTM for kernel width tape.k over the tape steps from zero state; returns
/// the final hidden state.
std::vector<double> lstm_forward(const RankerModel& model, const Tape& tape);

/// Relevance score. Throws InvariantError on a shape mismatch.
double score(const RankerModel& model, const InteractionMatrix& matrix);

double forward(const RankerModel& model, const InteractionMatrix& matrix, ForwardTrace& trace);

/// Accumulates d(score)/d(theta) * upstream into `grad`.
void backward(const RankerModel& model, const InteractionMatrix& matrix, const ForwardTrace& trace, double upstream,
              std::span<double> grad);

/// ln(1 + exp(-(s_pos - s_neg))), overflow safe.
double pairwise_loss(double s_pos, double s_neg);

/// l2_coefficient * sum of squared CNN kernel weights.
double l2_penalty(const RankerModel& model);

struct PairGradient {
  double objective = 0.0;  // pairwise loss + L2 penalty
  double loss = 0.0;       // pairwise loss only
  double s_pos = 0.0;
  double s_neg = 0.0;
  ParamGradient grad;
};

/// Exact derivatives of pairwise_loss(score(pos), score(neg)) + L2 penalty.
PairGradient gradients(const RankerModel& model, const InteractionMatrix& pos, const InteractionMatrix& neg);

/// Activation regime of every ReLU and hard-sigmoid gate in a trace; two
/// traces with equal patterns lie on the same linear piece.
std::vector<std::int8_t> activation_pattern(const ForwardTrace& trace, int hidden);

}  // namespace tilebars
