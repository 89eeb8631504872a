#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>

#include "support.hpp"
#include "tilebars/checkpoint.hpp"

using namespace tilebars;
using namespace testing_support;

namespace {

RankerModel sample_model() {
  Hyperparams hp = Hyperparams::trec();
  hp.learning_rate = 0.003;
  hp.forget_bias = 0.5;
  hp.seed = 42;
  RankerModel model(4, 30, hp);
  model.initialize(hp);
  return model;
}

}  // namespace

TEST(FormatReal, ShortestRoundTrip) {
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(1.0), "1");
  EXPECT_EQ(format_real(-0.0), "-0");
  for (double v : {1.0 / 3.0, 1e-300, -2.5e17, std::numeric_limits<double>::denorm_min()}) {
    EXPECT_EQ(std::strtod(format_real(v).c_str(), nullptr), v);
  }
}

TEST(Checkpoint, ExactRoundTrip) {
  auto model = sample_model();
  model.params()[0] = std::numeric_limits<double>::denorm_min();
  model.params()[1] = -1e-310;
  model.params()[2] = 1.0 / 3.0;
  const auto text = serialize_checkpoint(model);
  const auto back = parse_checkpoint(text);
  EXPECT_EQ(back, model);
  EXPECT_EQ(serialize_checkpoint(back), text);
  EXPECT_EQ(text.rfind("tilebars-model 1\n", 0), 0u);
}

TEST(Checkpoint, FileRoundTrip) {
  TempDir dir;
  const auto model = sample_model();
  save_checkpoint(model, dir / "m.ckpt");
  EXPECT_EQ(load_checkpoint(dir / "m.ckpt"), model);
  EXPECT_THROW(load_checkpoint(dir / "missing.ckpt"), InputError);
}

TEST(Checkpoint, RejectsCorruption) {
  const auto text = serialize_checkpoint(sample_model());
  auto bad_version = text;
  bad_version.replace(0, 16, "tilebars-model 9");
  EXPECT_THROW(parse_checkpoint(bad_version), InputError);
  EXPECT_THROW(parse_checkpoint(text.substr(0, text.size() / 2)), InputError);
  auto unknown = text;
  unknown.insert(unknown.find("n_b"), "colour blue\n");
  EXPECT_THROW(parse_checkpoint(unknown), InputError);
  EXPECT_THROW(parse_checkpoint(""), InputError);
}
