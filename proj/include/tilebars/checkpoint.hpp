#pragma once

#include <filesystem>
#include <string>

#include "tilebars/ranker.hpp"

namespace tilebars {

inline constexpr int kCheckpointVersion = 1;

/// Line-oriented text checkpoint:
///
///   tilebars-model 1
///   n_q 5
///   n_b 30
///   <hyperparameter> <value> ...      one per line
///   tensor <name> <dim>...            then one value per line
///
/// Reals are written in shortest round-trip form, so save/load is exact and
/// equal models produce identical bytes.
std::string serialize_checkpoint(const RankerModel& model);

RankerModel parse_checkpoint(const std::string& text, const std::string& source = "<memory>");

void save_checkpoint(const RankerModel& model, const std::filesystem::path& path);

/// Throws InputError on a version mismatch, unknown field or shape
/// disagreement.
RankerModel load_checkpoint(const std::filesystem::path& path);

/// Shortest decimal form that parses back to exactly `value`.
std::string format_real(double value);

}  // namespace tilebars
