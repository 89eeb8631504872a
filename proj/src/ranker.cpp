#include "tilebars/ranker.hpp"

#include <algorithm>
#include <cmath>

#include "tilebars/rng.hpp"

namespace tilebars {
namespace {

constexpr int kGates = 4;  // forget, input, output, candidate
constexpr int kCandidate = 3;

inline std::size_t idx(int v) { return static_cast<std::size_t>(v); }

double hard_sigmoid_slope(double x) { return (x > -2.5 && x < 2.5) ? 0.2 : 0.0; }

void check_shape(const RankerModel& model, const InteractionMatrix& matrix) {
  if (matrix.n_q() != model.n_q() || matrix.n_b() != model.n_b()) {
    throw InvariantError("matrix is " + std::to_string(matrix.n_q()) + "x" + std::to_string(matrix.n_b()) +
                         " but the model expects " + std::to_string(model.n_q()) + "x" + std::to_string(model.n_b()));
  }
}

void conv_layer(const RankerModel& model, const InteractionMatrix& matrix, int k, KernelTrace& trace) {
  const int n_q = model.n_q();
  const int n_b = model.n_b();
  const int filters = model.hyperparams().filters;
  const int steps = n_b - k + 1;
  const auto params = model.params();
  const double* kernel = params.data() + model.layout().cnn_kernel(k);
  const double* bias = params.data() + model.layout().cnn_bias(k);
  const auto cells = matrix.values();

  trace.k = k;
  trace.steps = steps;
  trace.conv_pre.assign(idx(steps) * idx(filters), 0.0);
  trace.tape = Tape{k, steps, filters, std::vector<double>(idx(steps) * idx(filters), 0.0)};
  for (int f = 0; f < filters; ++f) {
    const double* kf = kernel + idx(f) * idx(n_q) * idx(k) * kChannels;
    for (int i = 0; i < steps; ++i) {
      double sum = bias[f];
      for (int u = 0; u < n_q; ++u) {
        const double* row = cells.data() + (idx(u) * idx(n_b) + idx(i)) * kChannels;
        const double* ku = kf + idx(u) * idx(k) * kChannels;
        for (int e = 0; e < k * kChannels; ++e) sum += ku[e] * row[e];
      }
      const std::size_t at = idx(i) * idx(filters) + idx(f);
      trace.conv_pre[at] = sum;
      trace.tape.values[at] = sum > 0.0 ? sum : 0.0;
    }
  }
}

void lstm_layer(const RankerModel& model, int k, const Tape& tape, KernelTrace& trace) {
  const int filters = model.hyperparams().filters;
  const int hidden = model.hyperparams().hidden;
  const int width = filters + hidden;
  const int steps = tape.steps;
  const auto params = model.params();
  const double* weights = params.data() + model.layout().lstm_gates(k);
  const double* bias = params.data() + model.layout().lstm_bias(k);

  trace.gate_pre.assign(idx(steps) * kGates * idx(hidden), 0.0);
  trace.gate_out.assign(idx(steps) * kGates * idx(hidden), 0.0);
  trace.cell.assign(idx(steps + 1) * idx(hidden), 0.0);
  trace.cell_tanh.assign(idx(steps) * idx(hidden), 0.0);
  trace.hidden.assign(idx(steps + 1) * idx(hidden), 0.0);

  std::vector<double> x(idx(width));
  for (int t = 0; t < steps; ++t) {
    for (int f = 0; f < filters; ++f) x[idx(f)] = tape.at(t, f);
    for (int h = 0; h < hidden; ++h) x[idx(filters + h)] = trace.hidden[idx(t) * idx(hidden) + idx(h)];
    double* pre = trace.gate_pre.data() + idx(t) * kGates * idx(hidden);
    double* out = trace.gate_out.data() + idx(t) * kGates * idx(hidden);
    for (int g = 0; g < kGates; ++g) {
      for (int h = 0; h < hidden; ++h) {
        const double* w = weights + (idx(g) * idx(hidden) + idx(h)) * idx(width);
        double sum = bias[idx(g) * idx(hidden) + idx(h)];
        for (int j = 0; j < width; ++j) sum += w[j] * x[idx(j)];
        const std::size_t at = idx(g) * idx(hidden) + idx(h);
        pre[at] = sum;
        out[at] = g == kCandidate ? std::tanh(sum) : hard_sigmoid(sum);
      }
    }
    for (int h = 0; h < hidden; ++h) {
      const double forget = out[idx(h)];
      const double input = out[idx(hidden) + idx(h)];
      const double output = out[2 * idx(hidden) + idx(h)];
      const double candidate = out[3 * idx(hidden) + idx(h)];
      const double c = forget * trace.cell[idx(t) * idx(hidden) + idx(h)] + input * candidate;
      const double ct = std::tanh(c);
      trace.cell[idx(t + 1) * idx(hidden) + idx(h)] = c;
      trace.cell_tanh[idx(t) * idx(hidden) + idx(h)] = ct;
      trace.hidden[idx(t + 1) * idx(hidden) + idx(h)] = output * ct;
    }
  }
}

}  // namespace

Hyperparams Hyperparams::trec() { return Hyperparams{}; }

Hyperparams Hyperparams::letor() {
  Hyperparams hp;
  hp.filters = 9;
  hp.hidden = 9;
  hp.mlp_sizes = {128, 16};
  return hp;
}

void Hyperparams::validate() const {
  if (max_kernel < 1) throw InvariantError("max kernel width l must be >= 1");
  if (filters < 1) throw InvariantError("filters per kernel width must be >= 1");
  if (hidden < 1) throw InvariantError("LSTM hidden units must be >= 1");
  for (int width : mlp_sizes) {
    if (width < 1) throw InvariantError("MLP layer widths must be >= 1");
  }
  if (!(learning_rate > 0.0) || !(adam_epsilon > 0.0)) throw InvariantError("rates must be positive");
  if (!(l2_coefficient >= 0.0)) throw InvariantError("L2 coefficient must be non-negative");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
    throw InvariantError("Adam betas must lie in [0, 1)");
  }
  if (patience < 0 || max_epochs < 1) throw InvariantError("patience must be >= 0 and max_epochs >= 1");
  if (!(init_scale >= 0.0)) throw InvariantError("init scale must be non-negative");
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0)) {
    throw InvariantError("validation fraction must lie in [0, 1)");
  }
}

ParamLayout::ParamLayout(int n_q, int n_b, const Hyperparams& hp) {
  hp.validate();
  if (n_q < 1 || n_b < 1) throw InvariantError("model input dimensions must be >= 1");
  if (hp.max_kernel > n_b) {
    throw InvariantError("max kernel width " + std::to_string(hp.max_kernel) + " exceeds n_b=" + std::to_string(n_b));
  }
  const int f = hp.filters;
  const int h = hp.hidden;
  for (int k = 1; k <= hp.max_kernel; ++k) {
    const std::string prefix = std::to_string(k);
    cnn_kernel_.push_back(add("cnn." + prefix + ".kernel", {f, n_q, k, kChannels}));
    cnn_bias_.push_back(add("cnn." + prefix + ".bias", {f}));
    lstm_gates_.push_back(add("lstm." + prefix + ".gates", {kGates, h, f + h}));
    lstm_bias_.push_back(add("lstm." + prefix + ".gate_bias", {kGates, h}));
  }
  mlp_widths_.push_back(hp.max_kernel * h);
  for (int width : hp.mlp_sizes) mlp_widths_.push_back(width);
  mlp_widths_.push_back(1);
  for (std::size_t m = 0; m + 1 < mlp_widths_.size(); ++m) {
    const std::string prefix = "mlp." + std::to_string(m + 1);
    mlp_weight_.push_back(add(prefix + ".weight", {mlp_widths_[m + 1], mlp_widths_[m]}));
    mlp_bias_.push_back(add(prefix + ".bias", {mlp_widths_[m + 1]}));
  }
}

std::size_t ParamLayout::add(std::string name, std::vector<int> shape) {
  std::size_t count = 1;
  for (int d : shape) count *= idx(d);
  tensors_.push_back({std::move(name), std::move(shape), size_, count});
  const std::size_t offset = size_;
  size_ += count;
  return offset;
}

const TensorInfo& ParamLayout::tensor_of(std::size_t index) const {
  auto it = std::upper_bound(tensors_.begin(), tensors_.end(), index,
                             [](std::size_t i, const TensorInfo& t) { return i < t.offset; });
  if (it == tensors_.begin() || index >= size_) throw InvariantError("parameter index out of range");
  return *std::prev(it);
}

RankerModel::RankerModel(int n_q, int n_b, Hyperparams hp)
    : n_q_(n_q), n_b_(n_b), hp_(std::move(hp)), layout_(n_q, n_b, hp_), params_(layout_.size(), 0.0) {}

std::span<double> RankerModel::cnn_kernel(int k) {
  return tensor(layout_.cnn_kernel(k), idx(hp_.filters) * idx(n_q_) * idx(k) * kChannels);
}
std::span<double> RankerModel::cnn_bias(int k) { return tensor(layout_.cnn_bias(k), idx(hp_.filters)); }
std::span<double> RankerModel::lstm_gates(int k) {
  return tensor(layout_.lstm_gates(k), kGates * idx(hp_.hidden) * idx(hp_.filters + hp_.hidden));
}
std::span<double> RankerModel::lstm_bias(int k) { return tensor(layout_.lstm_bias(k), kGates * idx(hp_.hidden)); }
std::span<double> RankerModel::mlp_weight(int layer) {
  const auto& w = layout_.mlp_widths();
  return tensor(layout_.mlp_weight(layer), idx(w[idx(layer)]) * idx(w[idx(layer + 1)]));
}
std::span<double> RankerModel::mlp_bias(int layer) {
  return tensor(layout_.mlp_bias(layer), idx(layout_.mlp_widths()[idx(layer + 1)]));
}

void RankerModel::initialize_uniform(std::uint64_t seed, double scale) {
  Rng rng(seed);
  for (double& p : params_) p = rng.uniform(-scale, scale);
}

void RankerModel::initialize(const Hyperparams& hp) {
  initialize_uniform(hp.seed, hp.init_scale);
  for (int k = 1; k <= hp_.max_kernel; ++k) {
    auto bias = lstm_bias(k);
    for (int h = 0; h < hp_.hidden; ++h) bias[static_cast<std::size_t>(h)] += hp.forget_bias;
  }
}

double hard_sigmoid(double x) { return std::clamp(0.2 * x + 0.5, 0.0, 1.0); }

Tape cnn_forward(const RankerModel& model, const InteractionMatrix& matrix, int k) {
  check_shape(model, matrix);
  if (k < 1 || k > model.hyperparams().max_kernel || k > model.n_b()) {
    throw InvariantError("kernel width " + std::to_string(k) + " is outside 1.." +
                         std::to_string(std::min(model.hyperparams().max_kernel, model.n_b())));
  }
  KernelTrace trace;
  conv_layer(model, matrix, k, trace);
  return std::move(trace.tape);
}

std::vector<double> lstm_forward(const RankerModel& model, const Tape& tape) {
  if (tape.steps < 1) throw InvariantError("LSTM input tape is empty");
  if (tape.filters != model.hyperparams().filters) throw InvariantError("tape width does not match filter count");
  KernelTrace trace;
  lstm_layer(model, tape.k, tape, trace);
  const int hidden = model.hyperparams().hidden;
  return {trace.hidden.end() - hidden, trace.hidden.end()};
}

double forward(const RankerModel& model, const InteractionMatrix& matrix, ForwardTrace& trace) {
  check_shape(model, matrix);
  const auto& hp = model.hyperparams();
  const auto& layout = model.layout();
  const auto params = model.params();

  trace.kernels.resize(idx(hp.max_kernel));
  std::vector<double> concat;
  concat.reserve(idx(hp.max_kernel) * idx(hp.hidden));
  for (int k = 1; k <= hp.max_kernel; ++k) {
    KernelTrace& kt = trace.kernels[idx(k - 1)];
    conv_layer(model, matrix, k, kt);
    lstm_layer(model, k, kt.tape, kt);
    concat.insert(concat.end(), kt.hidden.end() - hp.hidden, kt.hidden.end());
  }

  const auto& widths = layout.mlp_widths();
  const std::size_t layers = widths.size() - 1;
  trace.mlp_pre.assign(layers, {});
  trace.mlp_in.assign(layers, {});
  trace.mlp_in[0] = std::move(concat);
  for (std::size_t m = 0; m < layers; ++m) {
    const auto& in = trace.mlp_in[m];
    const int n_in = widths[m];
    const int n_out = widths[m + 1];
    const double* w = params.data() + layout.mlp_weight(static_cast<int>(m));
    const double* b = params.data() + layout.mlp_bias(static_cast<int>(m));
    auto& pre = trace.mlp_pre[m];
    pre.assign(idx(n_out), 0.0);
    for (int o = 0; o < n_out; ++o) {
      double sum = b[o];
      const double* row = w + idx(o) * idx(n_in);
      for (int j = 0; j < n_in; ++j) sum += row[j] * in[idx(j)];
      pre[idx(o)] = sum;
    }
    if (m + 1 < layers) {
      auto& next = trace.mlp_in[m + 1];
      next.resize(pre.size());
      for (std::size_t o = 0; o < pre.size(); ++o) next[o] = pre[o] > 0.0 ? pre[o] : 0.0;
    }
  }
  trace.score = trace.mlp_pre.back()[0];
  return trace.score;
}

double score(const RankerModel& model, const InteractionMatrix& matrix) {
  ForwardTrace trace;
  return forward(model, matrix, trace);
}

void backward(const RankerModel& model, const InteractionMatrix& matrix, const ForwardTrace& trace, double upstream,
              std::span<double> grad) {
  const auto& hp = model.hyperparams();
  const auto& layout = model.layout();
  const auto params = model.params();
  if (grad.size() != params.size()) throw InvariantError("gradient buffer does not match the parameter layout");

  // MLP.
  const auto& widths = layout.mlp_widths();
  const std::size_t layers = widths.size() - 1;
  std::vector<double> d_pre{upstream};
  std::vector<double> d_in;
  for (std::size_t m = layers; m-- > 0;) {
    const int n_in = widths[m];
    const int n_out = widths[m + 1];
    const double* w = params.data() + layout.mlp_weight(static_cast<int>(m));
    double* gw = grad.data() + layout.mlp_weight(static_cast<int>(m));
    double* gb = grad.data() + layout.mlp_bias(static_cast<int>(m));
    const auto& in = trace.mlp_in[m];
    d_in.assign(idx(n_in), 0.0);
    for (int o = 0; o < n_out; ++o) {
      const double d = d_pre[idx(o)];
      if (d == 0.0) continue;
      gb[o] += d;
      const double* row = w + idx(o) * idx(n_in);
      double* grow = gw + idx(o) * idx(n_in);
      for (int j = 0; j < n_in; ++j) {
        grow[j] += d * in[idx(j)];
        d_in[idx(j)] += d * row[j];
      }
    }
    if (m > 0) {
      const auto& pre = trace.mlp_pre[m - 1];
      d_pre.assign(pre.size(), 0.0);
      for (std::size_t j = 0; j < pre.size(); ++j) d_pre[j] = pre[j] > 0.0 ? d_in[j] : 0.0;
    }
  }

  const int n_q = model.n_q();
  const int n_b = model.n_b();
  const int filters = hp.filters;
  const int hidden = hp.hidden;
  const int width = filters + hidden;
  const auto cells = matrix.values();

  std::vector<double> dh(idx(hidden));
  std::vector<double> dc(idx(hidden));
  std::vector<double> dpre(kGates * idx(hidden));
  std::vector<double> dx(idx(width));
  std::vector<double> x(idx(width));
  for (int k = 1; k <= hp.max_kernel; ++k) {
    const KernelTrace& kt = trace.kernels[idx(k - 1)];
    const int steps = kt.steps;
    const double* w = params.data() + layout.lstm_gates(k);
    double* gw = grad.data() + layout.lstm_gates(k);
    double* gb = grad.data() + layout.lstm_bias(k);

    std::copy(d_in.begin() + (k - 1) * hidden, d_in.begin() + k * hidden, dh.begin());
    std::fill(dc.begin(), dc.end(), 0.0);
    std::vector<double> dtape(idx(steps) * idx(filters), 0.0);

    for (int t = steps; t-- > 0;) {
      const double* out = kt.gate_out.data() + idx(t) * kGates * idx(hidden);
      const double* pre = kt.gate_pre.data() + idx(t) * kGates * idx(hidden);
      for (int h = 0; h < hidden; ++h) {
        const double ct = kt.cell_tanh[idx(t) * idx(hidden) + idx(h)];
        const double c_prev = kt.cell[idx(t) * idx(hidden) + idx(h)];
        const double forget = out[idx(h)];
        const double input = out[idx(hidden) + idx(h)];
        const double output = out[2 * idx(hidden) + idx(h)];
        const double candidate = out[3 * idx(hidden) + idx(h)];

        const double d_output = dh[idx(h)] * ct;
        const double d_cell = dc[idx(h)] + dh[idx(h)] * output * (1.0 - ct * ct);
        dpre[idx(h)] = d_cell * c_prev * hard_sigmoid_slope(pre[idx(h)]);
        dpre[idx(hidden) + idx(h)] = d_cell * candidate * hard_sigmoid_slope(pre[idx(hidden) + idx(h)]);
        dpre[2 * idx(hidden) + idx(h)] = d_output * hard_sigmoid_slope(pre[2 * idx(hidden) + idx(h)]);
        dpre[3 * idx(hidden) + idx(h)] = d_cell * input * (1.0 - candidate * candidate);
        dc[idx(h)] = d_cell * forget;
      }

      for (int f = 0; f < filters; ++f) x[idx(f)] = kt.tape.at(t, f);
      for (int h = 0; h < hidden; ++h) x[idx(filters + h)] = kt.hidden[idx(t) * idx(hidden) + idx(h)];
      std::fill(dx.begin(), dx.end(), 0.0);
      for (int g = 0; g < kGates; ++g) {
        for (int h = 0; h < hidden; ++h) {
          const std::size_t unit = idx(g) * idx(hidden) + idx(h);
          const double d = dpre[unit];
          if (d == 0.0) continue;
          gb[unit] += d;
          const double* row = w + unit * idx(width);
          double* grow = gw + unit * idx(width);
          for (int j = 0; j < width; ++j) {
            grow[j] += d * x[idx(j)];
            dx[idx(j)] += d * row[j];
          }
        }
      }
      for (int f = 0; f < filters; ++f) dtape[idx(t) * idx(filters) + idx(f)] = dx[idx(f)];
      for (int h = 0; h < hidden; ++h) dh[idx(h)] = dx[idx(filters + h)];
    }

    double* gk = grad.data() + layout.cnn_kernel(k);
    double* gbias = grad.data() + layout.cnn_bias(k);
    for (int f = 0; f < filters; ++f) {
      double* kf = gk + idx(f) * idx(n_q) * idx(k) * kChannels;
      for (int i = 0; i < steps; ++i) {
        const std::size_t at = idx(i) * idx(filters) + idx(f);
        if (!(kt.conv_pre[at] > 0.0)) continue;
        const double d = dtape[at];
        if (d == 0.0) continue;
        gbias[f] += d;
        for (int u = 0; u < n_q; ++u) {
          const double* row = cells.data() + (idx(u) * idx(n_b) + idx(i)) * kChannels;
          double* ku = kf + idx(u) * idx(k) * kChannels;
          for (int e = 0; e < k * kChannels; ++e) ku[e] += d * row[e];
        }
      }
    }
  }
}

double pairwise_loss(double s_pos, double s_neg) {
  const double margin = s_pos - s_neg;
  // softplus(-margin) = max(-margin, 0) + log1p(exp(-|margin|))
  return std::max(-margin, 0.0) + std::log1p(std::exp(-std::abs(margin)));
}

double l2_penalty(const RankerModel& model) {
  const auto params = model.params();
  double sum = 0.0;
  for (int k = 1; k <= model.hyperparams().max_kernel; ++k) {
    const std::size_t start = model.layout().cnn_kernel(k);
    const std::size_t count = idx(model.hyperparams().filters) * idx(model.n_q()) * idx(k) * kChannels;
    for (std::size_t i = start; i < start + count; ++i) sum += params[i] * params[i];
  }
  return model.hyperparams().l2_coefficient * sum;
}

PairGradient gradients(const RankerModel& model, const InteractionMatrix& pos, const InteractionMatrix& neg) {
  PairGradient out;
  ForwardTrace pos_trace;
  ForwardTrace neg_trace;
  out.s_pos = forward(model, pos, pos_trace);
  out.s_neg = forward(model, neg, neg_trace);
  out.loss = pairwise_loss(out.s_pos, out.s_neg);
  out.objective = out.loss + l2_penalty(model);

  // d loss / d margin = -sigmoid(-margin), computed without overflow.
  const double margin = out.s_pos - out.s_neg;
  const double d_margin =
      margin >= 0.0 ? -std::exp(-margin) / (1.0 + std::exp(-margin)) : -1.0 / (1.0 + std::exp(margin));

  out.grad.assign(model.params().size(), 0.0);
  backward(model, pos, pos_trace, d_margin, out.grad);
  backward(model, neg, neg_trace, -d_margin, out.grad);

  const double l2 = model.hyperparams().l2_coefficient;
  if (l2 != 0.0) {
    const auto params = model.params();
    for (int k = 1; k <= model.hyperparams().max_kernel; ++k) {
      const std::size_t start = model.layout().cnn_kernel(k);
      const std::size_t count = idx(model.hyperparams().filters) * idx(model.n_q()) * idx(k) * kChannels;
      for (std::size_t i = start; i < start + count; ++i) out.grad[i] += 2.0 * l2 * params[i];
    }
  }
  return out;
}

std::vector<std::int8_t> activation_pattern(const ForwardTrace& trace, int hidden) {
  std::vector<std::int8_t> pattern;
  const auto gate_regime = [](double x) -> std::int8_t { return x <= -2.5 ? 0 : (x >= 2.5 ? 2 : 1); };
  for (const auto& kt : trace.kernels) {
    for (double v : kt.conv_pre) pattern.push_back(v > 0.0 ? 1 : 0);
    for (std::size_t i = 0; i < kt.gate_pre.size(); ++i) {
      const std::size_t gate = (i / idx(hidden)) % kGates;
      if (gate != kCandidate) pattern.push_back(gate_regime(kt.gate_pre[i]));
    }
  }
  for (std::size_t m = 0; m + 1 < trace.mlp_pre.size(); ++m) {
    for (double v : trace.mlp_pre[m]) pattern.push_back(v > 0.0 ? 1 : 0);
  }
  return pattern;
}

}  // namespace tilebars
