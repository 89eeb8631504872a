#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tilebars/corpus.hpp"
#include "tilebars/interaction.hpp"

namespace tilebars {

struct TopicBlockDocument {
  std::string text;
  std::vector<int> seams;          // 1-based gaps between blocks
  std::vector<int> block_lengths;  // in token sequences
};

struct TopicBlockOptions {
  int alpha = 20;
  int min_blocks = 2;
  int max_blocks = 4;
  int min_sequences = 12;  // per block
  int max_sequences = 18;
  int vocabulary = 40;     // distinct words per topic
};

/// Blocks drawn from pairwise disjoint vocabularies, each a whole number of
/// alpha-term sequences long, with no paragraph breaks.
TopicBlockDocument topic_block_document(std::uint64_t seed, const TopicBlockOptions& options = {});

struct SyntheticPairs {
  std::vector<TrainingTriple> triples;
  std::vector<InteractionMatrix> positives;  // positives[i] belongs to triples[i]
  std::vector<InteractionMatrix> negatives;
};

/// `count` triples. Positive matrices hold every query term in one run of
/// 3 to 5 consecutive segments; negatives spread the same amount of matching
/// over isolated segments.
SyntheticPairs concentrated_vs_scattered(int count, int n_q, int n_b, std::uint64_t seed);

}  // namespace tilebars
