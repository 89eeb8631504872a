#include "tilebars/checkpoint.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace tilebars {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> fields;
  std::string f;
  while (in >> f) fields.push_back(f);
  return fields;
}

template <typename T>
T parse_field(const std::string& text, const std::string& at) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError(at + ": cannot parse '" + text + "'");
  }
  return value;
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string serialize_checkpoint(const RankerModel& model) {
  const Hyperparams& hp = model.hyperparams();
  std::ostringstream out;
  out << "tilebars-model " << kCheckpointVersion << '\n';
  out << "n_q " << model.n_q() << '\n';
  out << "n_b " << model.n_b() << '\n';
  out << "max_kernel " << hp.max_kernel << '\n';
  out << "filters " << hp.filters << '\n';
  out << "hidden " << hp.hidden << '\n';
  out << "mlp_sizes";
  for (int w : hp.mlp_sizes) out << ' ' << w;
  out << '\n';
  out << "learning_rate " << format_real(hp.learning_rate) << '\n';
  out << "l2_coefficient " << format_real(hp.l2_coefficient) << '\n';
  out << "adam_beta1 " << format_real(hp.adam_beta1) << '\n';
  out << "adam_beta2 " << format_real(hp.adam_beta2) << '\n';
  out << "adam_epsilon " << format_real(hp.adam_epsilon) << '\n';
  out << "patience " << hp.patience << '\n';
  out << "max_epochs " << hp.max_epochs << '\n';
  out << "seed " << hp.seed << '\n';
  out << "init_scale " << format_real(hp.init_scale) << '\n';
  out << "validation_fraction " << format_real(hp.validation_fraction) << '\n';
  out << "forget_bias " << format_real(hp.forget_bias) << '\n';
  const auto params = model.params();
  for (const auto& t : model.layout().tensors()) {
    out << "tensor " << t.name;
    for (int d : t.shape) out << ' ' << d;
    out << '\n';
    for (std::size_t i = 0; i < t.size; ++i) out << format_real(params[t.offset + i]) << '\n';
  }
  return out.str();
}

RankerModel parse_checkpoint(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  const auto at = [&] { return source + ":" + std::to_string(line_no); };
  const auto next_fields = [&]() -> std::vector<std::string> {
    while (std::getline(in, line)) {
      ++line_no;
      auto fields = split(line);
      if (!fields.empty()) return fields;
    }
    return {};
  };

  auto fields = next_fields();
  if (fields.size() != 2 || fields[0] != "tilebars-model") throw InputError(source + ": not a model checkpoint");
  const int version = parse_field<int>(fields[1], at());
  if (version != kCheckpointVersion) {
    throw InputError(at() + ": checkpoint version " + std::to_string(version) + " is not supported (expected " +
                     std::to_string(kCheckpointVersion) + ")");
  }

  int n_q = 0;
  int n_b = 0;
  Hyperparams hp;
  fields = next_fields();
  while (!fields.empty() && fields[0] != "tensor") {
    const std::string& key = fields[0];
    if (key == "mlp_sizes") {
      hp.mlp_sizes.clear();
      for (std::size_t i = 1; i < fields.size(); ++i) hp.mlp_sizes.push_back(parse_field<int>(fields[i], at()));
    } else {
      if (fields.size() != 2) throw InputError(at() + ": expected '<key> <value>'");
      const std::string& v = fields[1];
      if (key == "n_q") n_q = parse_field<int>(v, at());
      else if (key == "n_b") n_b = parse_field<int>(v, at());
      else if (key == "max_kernel") hp.max_kernel = parse_field<int>(v, at());
      else if (key == "filters") hp.filters = parse_field<int>(v, at());
      else if (key == "hidden") hp.hidden = parse_field<int>(v, at());
      else if (key == "learning_rate") hp.learning_rate = parse_field<double>(v, at());
      else if (key == "l2_coefficient") hp.l2_coefficient = parse_field<double>(v, at());
      else if (key == "adam_beta1") hp.adam_beta1 = parse_field<double>(v, at());
      else if (key == "adam_beta2") hp.adam_beta2 = parse_field<double>(v, at());
      else if (key == "adam_epsilon") hp.adam_epsilon = parse_field<double>(v, at());
      else if (key == "patience") hp.patience = parse_field<int>(v, at());
      else if (key == "max_epochs") hp.max_epochs = parse_field<int>(v, at());
      else if (key == "seed") hp.seed = parse_field<std::uint64_t>(v, at());
      else if (key == "init_scale") hp.init_scale = parse_field<double>(v, at());
      else if (key == "validation_fraction") hp.validation_fraction = parse_field<double>(v, at());
      else if (key == "forget_bias") hp.forget_bias = parse_field<double>(v, at());
      else throw InputError(at() + ": unknown checkpoint field '" + key + "'");
    }
    fields = next_fields();
  }

  RankerModel model;
  try {
    model = RankerModel(n_q, n_b, hp);
  } catch (const InvariantError& e) {
    throw InputError(source + ": inconsistent checkpoint header (" + e.what() + ")");
  }
  auto params = model.params();
  for (const auto& t : model.layout().tensors()) {
    if (fields.size() < 2 || fields[0] != "tensor" || fields[1] != t.name) {
      throw InputError(at() + ": expected tensor " + t.name);
    }
    std::vector<int> shape;
    for (std::size_t i = 2; i < fields.size(); ++i) shape.push_back(parse_field<int>(fields[i], at()));
    if (shape != t.shape) throw InputError(at() + ": tensor " + t.name + " has an unexpected shape");
    for (std::size_t i = 0; i < t.size; ++i) {
      auto value = next_fields();
      if (value.size() != 1) throw InputError(at() + ": tensor " + t.name + " is truncated");
      params[t.offset + i] = parse_field<double>(value[0], at());
    }
    fields = next_fields();
  }
  if (!fields.empty()) throw InputError(at() + ": trailing data after the last tensor");
  return model;
}

void save_checkpoint(const RankerModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write checkpoint: " + path.string());
  out << serialize_checkpoint(model);
}

RankerModel load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read checkpoint: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_checkpoint(text.str(), path.string());
}

}  // namespace tilebars
