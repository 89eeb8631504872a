#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tilebars/app.hpp"

namespace {

using tilebars::RunConfig;

struct ArchitectureFlags {
  std::optional<int> filters;
  std::optional<int> hidden;
  std::optional<std::vector<int>> mlp_sizes;
};

void add_shared_options(CLI::App& app, RunConfig& c, ArchitectureFlags& arch, std::string& render_mode) {
  app.add_option("--corpus", c.corpus, "Corpus directory or TSV file");
  app.add_option("--corpus-format", c.corpus_format, "dir or tsv")->capture_default_str();
  app.add_option("--queries", c.queries, "query_id TAB text per line");
  app.add_option("--qrels", c.qrels, "Graded judgments, four columns");
  app.add_option("--embeddings", c.embeddings, "Word vectors in text format");
  app.add_option("--stopwords", c.stopwords, "Stopword list (default: built-in English)");
  app.add_option("--index-dir", c.index_dir, "Segment cache and stats directory")->capture_default_str();
  app.add_option("--model", c.model, "Checkpoint path (default: <output-dir>/model.ckpt)");
  app.add_option("--run", c.run, "Run file (default: <output-dir>/run.txt)");
  app.add_option("--output-dir", c.output_dir, "Output directory")->capture_default_str();

  app.add_option("--alpha", c.segmentation.alpha, "Token-sequence length")->capture_default_str();
  app.add_option("--beta", c.segmentation.beta, "Similarity window in sequences")->capture_default_str();
  app.add_option("--paragraph-snap", c.segmentation.paragraph_snap, "Max terms a cut moves to a paragraph break")
      ->capture_default_str();
  app.add_option("--valleys-only", c.segmentation.valleys_only, "Boundaries only at local minima")
      ->capture_default_str();
  app.add_option("--smoothing-width", c.segmentation.smoothing_width, "Curve smoothing half-width, 0 = off")
      ->capture_default_str();

  app.add_option("--n-q", c.n_q, "Standard query length, 0 = longest query")->capture_default_str();
  app.add_option("--n-b", c.n_b, "Standard number of segments")->capture_default_str();
  app.add_option("--profile", c.profile, "trec or letor")->capture_default_str();
  app.add_option("--max-kernel", c.hp.max_kernel, "Largest kernel width l")->capture_default_str();
  app.add_option("--filters", arch.filters, "Filters per kernel width (default from profile)");
  app.add_option("--hidden", arch.hidden, "LSTM units (default from profile)");
  app.add_option("--mlp-sizes", arch.mlp_sizes, "Hidden MLP widths (default from profile)")->delimiter(',');
  app.add_option("--learning-rate", c.hp.learning_rate)->capture_default_str();
  app.add_option("--l2", c.hp.l2_coefficient, "L2 coefficient on CNN kernels")->capture_default_str();
  app.add_option("--patience", c.hp.patience)->capture_default_str();
  app.add_option("--max-epochs", c.hp.max_epochs)->capture_default_str();
  app.add_option("--init-scale", c.hp.init_scale)->capture_default_str();
  app.add_option("--forget-bias", c.hp.forget_bias, "Added to LSTM forget-gate biases at init")->capture_default_str();
  app.add_option("--validation-fraction", c.hp.validation_fraction)->capture_default_str();
  app.add_option("--seed", c.seed)->capture_default_str();
  app.add_option("--jobs", c.jobs, "Worker threads, 0 = all, 1 = serial")->capture_default_str();

  app.add_option("--triples-per-query", c.triples_per_query)->capture_default_str();
  app.add_flag("--w2w", c.word_to_word, "Word-to-word ablation matrices");
  app.add_option("--folds", c.folds, "Cross-validation folds, 0 = none")->capture_default_str();
  app.add_option("--cutoffs", c.cutoffs, "Metric cutoffs")->delimiter(',')->capture_default_str();
  app.add_option("--baseline", c.baseline, "bm25, lm or random instead of a model");
  app.add_option("--bm25-k1", c.bm25.k1)->capture_default_str();
  app.add_option("--bm25-b", c.bm25.b)->capture_default_str();
  app.add_option("--lm-mu", c.lm_mu)->capture_default_str();
  app.add_option("--tag", c.run_tag, "Run tag")->capture_default_str();

  app.add_option("--cell-px", c.render.cell_px)->capture_default_str();
  app.add_option("--mode", render_mode, "gray or rgb")->capture_default_str();
  app.add_option("--gamma", c.render.gamma)->capture_default_str();
  app.add_flag("--grid-lines", c.render.grid_lines);
  app.add_flag("--dump", c.grid_dump, "Also write the channel grid as text");
}

void finish_config(RunConfig& c, const ArchitectureFlags& arch, const std::string& render_mode) {
  tilebars::Hyperparams base = tilebars::profile_hyperparams(c.profile);
  c.hp.filters = arch.filters.value_or(base.filters);
  c.hp.hidden = arch.hidden.value_or(base.hidden);
  c.hp.mlp_sizes = arch.mlp_sizes.value_or(base.mlp_sizes);
  c.hp.seed = c.seed;
  c.render.mode = tilebars::parse_render_mode(render_mode);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Segment-level interaction matrices and a CNN/LSTM ranker for ad-hoc retrieval"};
  app.set_config("--config", "", "INI or TOML file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  ArchitectureFlags arch;
  std::string render_mode = "gray";
  add_shared_options(app, config, arch, render_mode);

  auto* index = app.add_subcommand("index", "Segment a corpus and write the segment cache and stats");
  auto* render = app.add_subcommand("render", "Render one query-document matrix as a P6 image");
  std::string query_id, doc_id;
  render->add_option("--query-id", query_id)->required();
  render->add_option("--doc-id", doc_id)->required();
  auto* train = app.add_subcommand("train", "Train the ranker on qrels triples");
  auto* rank = app.add_subcommand("rank", "Rank the indexed corpus for every query");
  auto* evaluate = app.add_subcommand("evaluate", "Score a run file against qrels");
  auto* gradcheck = app.add_subcommand("gradcheck", "Compare gradients with central differences");
  tilebars::GradCheckOptions grad_options;
  gradcheck->add_option("--epsilon", grad_options.epsilon)->capture_default_str();
  gradcheck->add_option("--threshold", grad_options.threshold)->capture_default_str();
  gradcheck->add_option("--check-seed", grad_options.seed)->capture_default_str();
  auto* selftest = app.add_subcommand("selftest", "Run built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    finish_config(config, arch, render_mode);
    if (*index) {
      const auto s = tilebars::cmd_index(config);
      std::cout << "indexed " << s.documents << " documents, " << s.segments << " segments, " << s.vocabulary
                << " terms\n";
    } else if (*render) {
      std::cout << tilebars::cmd_render(config, query_id, doc_id).string() << '\n';
    } else if (*train) {
      const auto s = tilebars::cmd_train(config);
      for (std::size_t i = 0; i < s.checkpoints.size(); ++i) {
        const auto& r = s.results[i];
        std::cout << s.checkpoints[i].string() << ": best epoch " << r.best_epoch << " of " << r.history.size()
                  << '\n';
      }
    } else if (*rank) {
      const auto rankings = tilebars::cmd_rank(config);
      std::cout << "ranked " << rankings.size() << " queries\n";
    } else if (*evaluate) {
      tilebars::cmd_evaluate(config, std::cout);
    } else if (*gradcheck) {
      return tilebars::cmd_gradcheck(config, grad_options, std::cout);
    } else if (*selftest) {
      return tilebars::cmd_selftest(config, std::cout);
    }
  } catch (const tilebars::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  }
  return 0;
}
