#include "tilebars/synthetic.hpp"

#include <algorithm>

#include "tilebars/rng.hpp"

namespace tilebars {
namespace {

std::string topic_word(int topic, int index) {
  static constexpr const char* kSyllables[] = {"ka", "lo", "mi", "ru", "ze", "po", "ni", "ta", "vu", "se"};
  std::string word = "x";
  word += kSyllables[topic % 10];
  word += kSyllables[(topic / 10) % 10];
  word += kSyllables[index % 10];
  word += kSyllables[(index / 10) % 10];
  return word;
}

void fill_cell(InteractionMatrix& m, int row, int col, double tf, double idf) {
  m.set_cell(row, col, {tf, idf, 1.0});
}

}  // namespace

TopicBlockDocument topic_block_document(std::uint64_t seed, const TopicBlockOptions& options) {
  Rng rng(seed);
  TopicBlockDocument doc;
  const int blocks = options.min_blocks + static_cast<int>(rng.below(
                                              static_cast<std::size_t>(options.max_blocks - options.min_blocks + 1)));
  int sequences = 0;
  for (int b = 0; b < blocks; ++b) {
    const int length = options.min_sequences + static_cast<int>(rng.below(
                                                   static_cast<std::size_t>(options.max_sequences -
                                                                            options.min_sequences + 1)));
    doc.block_lengths.push_back(length);
    if (b > 0) doc.seams.push_back(sequences);
    sequences += length;
    for (int t = 0; t < length * options.alpha; ++t) {
      // Skewed toward low indices so topics have frequent core words.
      const double u = rng.uniform();
      const int index = static_cast<int>(u * u * options.vocabulary);
      if (!doc.text.empty()) doc.text += ' ';
      doc.text += topic_word(b, index);
    }
  }
  return doc;
}

SyntheticPairs concentrated_vs_scattered(int count, int n_q, int n_b, std::uint64_t seed) {
  Rng rng(seed);
  SyntheticPairs out;
  for (int i = 0; i < count; ++i) {
    InteractionMatrix pos(n_q, n_b);
    InteractionMatrix neg(n_q, n_b);
    std::vector<double> idf(static_cast<std::size_t>(n_q));
    for (auto& v : idf) v = rng.uniform(1.0, 3.0);

    const int run = 3 + static_cast<int>(rng.below(3));
    const int start = static_cast<int>(rng.below(static_cast<std::size_t>(n_b - run + 1)));
    std::vector<int> matches(static_cast<std::size_t>(n_q), 0);
    for (int r = 0; r < n_q; ++r) {
      for (int c = start; c < start + run; ++c) {
        const int tf = 1 + static_cast<int>(rng.below(3));
        fill_cell(pos, r, c, tf, idf[static_cast<std::size_t>(r)]);
        matches[static_cast<std::size_t>(r)] += tf;
      }
    }

    // Even columns only, so no two matching segments touch.
    std::vector<int> columns;
    for (int c = 0; c < n_b; c += 2) columns.push_back(c);
    for (int r = 0; r < n_q; ++r) {
      rng.shuffle(columns);
      int remaining = matches[static_cast<std::size_t>(r)];
      std::size_t next = 0;
      while (remaining > 0) {
        const int col = columns[next % columns.size()];
        const int tf = std::min(remaining, 1 + static_cast<int>(rng.below(2)));
        const double prior = neg.at(r, col, kTfChannel);
        fill_cell(neg, r, col, prior + tf, idf[static_cast<std::size_t>(r)]);
        remaining -= tf;
        ++next;
      }
    }
    // Columns of each matrix without any match keep a weak similarity signal.
    for (auto* m : {&pos, &neg}) {
      for (int r = 0; r < n_q; ++r) {
        for (int c = 0; c < n_b; ++c) {
          if (m->at(r, c, kTfChannel) == 0.0) m->at(r, c, kSimChannel) = rng.uniform(0.0, 0.3);
        }
      }
    }

    const std::string id = std::to_string(i + 1);
    out.triples.push_back({"q" + id, "pos" + id, "neg" + id});
    out.positives.push_back(std::move(pos));
    out.negatives.push_back(std::move(neg));
  }
  return out;
}

}  // namespace tilebars
