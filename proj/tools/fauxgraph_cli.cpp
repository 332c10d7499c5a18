// Command-line front end: dataset validation, synthetic data, training,
// evaluation and the time-window sweep.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fauxgraph/config.hpp"
#include "fauxgraph/dataset_io.hpp"
#include "fauxgraph/error.hpp"
#include "fauxgraph/model_io.hpp"
#include "fauxgraph/synthetic.hpp"
#include "fauxgraph/training.hpp"
#include "outputs.hpp"

namespace fs = std::filesystem;
using namespace fauxgraph;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string config_path;
  std::string lexicon_dir;
  bool quiet = false;
};

struct Context {
  GlobalOptions global;

  PipelineConfig config() const {
    PipelineConfig cfg = global.config_path.empty() ? PipelineConfig{} : load_config(global.config_path);
    if (global.seed) {
      cfg.model.seed = *global.seed;
      cfg.train.seed = *global.seed;
      cfg.synth.seed = *global.seed;
    }
    cfg.sync_dimensions();
    return cfg;
  }

  Lexicons lexicons() const {
    return global.lexicon_dir.empty() ? Lexicons::defaults() : Lexicons::load(global.lexicon_dir);
  }

  std::ostream& info() const {
    static std::ostream null_stream(nullptr);
    return global.quiet ? null_stream : std::cout;
  }
};

std::vector<PostRecord> read_dataset(const std::string& path) {
  auto parsed = parse_posts(fs::path(path));
  for (const auto& e : parsed.errors) std::cerr << path << ":" << e.line << ": skipped: " << e.message << "\n";
  if (parsed.unknown_fields > 0) {
    std::cerr << path << ": ignored " << parsed.unknown_fields << " unknown field(s)\n";
  }
  return std::move(parsed.posts);
}

std::vector<LabeledExample> labeled_examples(std::span<const PostRecord> posts, const Lexicons& lex,
                                             const FeatureConfig& features) {
  auto examples = make_examples(posts, lex, features);
  for (const auto& e : examples) {
    if (e.label < 0) throw DataError("post " + e.post_id + " has no label");
  }
  return examples;
}

std::vector<std::int64_t> parse_windows(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw CLI::ValidationError("--windows", "not an integer: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("--windows", "no windows given");
  return out;
}

// ---------------------------------------------------------------------------

int run_ingest(const Context& ctx, const std::string& input) {
  const auto parsed = parse_posts(fs::path(input));
  std::size_t comments = 0, labeled = 0, positive = 0;
  for (const auto& p : parsed.posts) {
    comments += p.comments.size();
    if (p.label) {
      ++labeled;
      positive += *p.label ? 1 : 0;
    }
  }
  for (const auto& e : parsed.errors) std::cerr << input << ":" << e.line << ": " << e.message << "\n";
  ctx.info() << "posts " << parsed.posts.size() << "\ncomments " << comments << "\nlabeled " << labeled
             << "\npositive " << positive << "\nmalformed_lines " << parsed.errors.size() << "\nunknown_fields "
             << parsed.unknown_fields << "\n";
  return parsed.errors.empty() ? 0 : kExitData;
}

int run_synth(const Context& ctx, const std::string& output, std::optional<std::size_t> n_posts,
              std::optional<double> balance) {
  auto cfg = ctx.config();
  if (n_posts) cfg.synth.n_posts = *n_posts;
  if (balance) cfg.synth.class_balance = *balance;
  const auto posts = generate_synthetic(cfg.synth);
  write_posts(fs::path(output), posts);
  ctx.info() << "wrote " << posts.size() << " posts to " << output << "\n";
  return 0;
}

int run_featurize(const Context& ctx, const std::string& input, const std::string& output) {
  const auto cfg = ctx.config();
  const auto posts = read_dataset(input);
  const auto examples = make_examples(posts, ctx.lexicons(), cfg.features);
  std::string text;
  for (const auto& e : examples) text += cli::feature_record_json(e) + "\n";
  cli::write_text(output, text);
  ctx.info() << "wrote " << examples.size() << " feature matrices of width " << FeatureLayout{cfg.features.linguistic_dim}.width()
             << " to " << output << "\n";
  return 0;
}

struct TrainOverrides {
  std::optional<std::size_t> epochs;
  std::optional<std::size_t> batch_size;
  std::optional<double> learning_rate;
};

void apply(const TrainOverrides& o, TrainConfig& t) {
  if (o.epochs) t.epochs = *o.epochs;
  if (o.batch_size) t.batch_size = *o.batch_size;
  if (o.learning_rate) t.adam.learning_rate = *o.learning_rate;
}

int run_train(const Context& ctx, const std::string& input, const std::string& model_path,
              const std::string& history_path, const TrainOverrides& overrides) {
  auto cfg = ctx.config();
  apply(overrides, cfg.train);
  const auto posts = read_dataset(input);
  const auto examples = labeled_examples(posts, ctx.lexicons(), cfg.features);
  const auto result = train(examples, cfg.model, cfg.train);
  save_model(model_path, ModelBundle{cfg.features, result.model, cfg.train.seed});
  if (!history_path.empty()) cli::write_history_csv(history_path, result.history);
  const auto& last = result.history.back();
  ctx.info() << "trained " << last.epoch << " epoch(s) on " << result.train_indices.size() << " posts; holdout "
             << result.holdout_indices.size() << " posts, accuracy " << cli::format_double(last.holdout_accuracy)
             << "\n";
  return 0;
}

int run_evaluate(const Context& ctx, const std::string& input, const std::string& model_path,
                 const std::string& report_path, const std::string& roc_path, double threshold) {
  const auto bundle = load_model(model_path);
  const auto posts = read_dataset(input);
  const auto examples = labeled_examples(posts, ctx.lexicons(), bundle.features);
  const auto scores = predict_scores(bundle.model, examples);
  std::vector<int> labels;
  for (const auto& e : examples) labels.push_back(e.label);
  // Rejects single-class data with an ROC-specific message.
  const auto roc = roc_auc(scores, labels);
  auto report = compute_metrics(scores, labels, threshold);
  report.roc = roc.points;
  report.auc = roc.auc;
  if (!report_path.empty()) cli::write_text(report_path, cli::report_json(report));
  if (!roc_path.empty()) cli::write_roc_csv(roc_path, report.roc);
  ctx.info() << "accuracy " << cli::format_double(report.accuracy) << "\nprecision "
             << cli::format_double(report.precision) << "\nrecall " << cli::format_double(report.recall) << "\nf1 "
             << cli::format_double(report.f1) << "\nauc " << cli::format_double(*report.auc) << "\n";
  return 0;
}

int run_predict(const Context& ctx, const std::string& input, const std::string& model_path,
                const std::string& post_id, double threshold) {
  const auto bundle = load_model(model_path);
  const auto posts = read_dataset(input);
  const PostRecord* chosen = nullptr;
  if (!post_id.empty()) {
    const auto it = std::find_if(posts.begin(), posts.end(), [&](const PostRecord& p) { return p.post_id == post_id; });
    if (it == posts.end()) throw DataError("no post with id " + post_id + " in " + input);
    chosen = &*it;
  } else if (posts.size() == 1) {
    chosen = &posts.front();
  } else {
    throw DataError(input + " holds " + std::to_string(posts.size()) + " posts; pick one with --post-id");
  }
  const auto example = make_example(*chosen, ctx.lexicons(), bundle.features);
  const auto p = predict(bundle.model, example, threshold);
  std::cout << cli::prediction_json(chosen->post_id, p) << "\n";
  return 0;
}

int run_sweep(const Context& ctx, const std::string& input, const std::string& output, const std::string& windows,
              const TrainOverrides& overrides) {
  auto cfg = ctx.config();
  apply(overrides, cfg.train);
  const auto posts = read_dataset(input);
  const auto w = parse_windows(windows);
  const auto rows = time_sweep(posts, w, ctx.lexicons(), cfg.features, cfg.model, cfg.train);
  cli::write_sweep_csv(output, rows);
  for (const auto& r : rows) {
    ctx.info() << "window " << r.window_seconds << "s: " << r.retained_comments << " comments, accuracy "
               << cli::format_double(r.report.accuracy) << "\n";
  }
  return 0;
}

int run_xval(const Context& ctx, const std::string& input, const std::string& output, std::size_t folds,
             const TrainOverrides& overrides) {
  auto cfg = ctx.config();
  apply(overrides, cfg.train);
  const auto posts = read_dataset(input);
  const auto examples = labeled_examples(posts, ctx.lexicons(), cfg.features);
  const auto report = cross_validate(examples, folds, cfg.model, cfg.train);
  if (!output.empty()) cli::write_text(output, cli::cross_validation_json(report));
  ctx.info() << folds << "-fold accuracy " << cli::format_double(report.accuracy.mean) << " +- "
             << cli::format_double(report.accuracy.stddev) << "\nf1 " << cli::format_double(report.f1.mean)
             << " +- " << cli::format_double(report.f1.stddev) << "\n";
  return 0;
}

void add_train_overrides(CLI::App* cmd, TrainOverrides& o) {
  cmd->add_option("--epochs", o.epochs, "Training epochs")->check(CLI::PositiveNumber);
  cmd->add_option("--batch-size", o.batch_size, "Graphs per mini-batch")->check(CLI::PositiveNumber);
  cmd->add_option("--learning-rate", o.learning_rate, "Adam step size")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fauxtography detection on comment graphs"};
  app.name("fauxgraph");
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  Context ctx;
  app.add_option("--seed", ctx.global.seed, "Seed for model init, training and generation");
  app.add_option("--config", ctx.global.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--lexicons", ctx.global.lexicon_dir, "Directory with lexicon files")->check(CLI::ExistingDirectory);
  app.add_flag("-q,--quiet", ctx.global.quiet, "Suppress progress output");

  std::string input, output, model, history, report, roc, post_id;
  std::string windows = "3600,21600,43200,86400,172800,259200,432000";
  std::optional<std::size_t> n_posts;
  std::optional<double> balance;
  double threshold = 0.5;
  std::size_t folds = 5;
  TrainOverrides overrides;

  auto* ingest = app.add_subcommand("ingest", "Validate a JSON-lines dataset");
  ingest->add_option("input", input, "Dataset file")->required();

  auto* synth = app.add_subcommand("synth", "Write a synthetic labeled dataset");
  synth->add_option("-o,--output", output, "Output dataset file")->required();
  synth->add_option("-n,--posts", n_posts, "Number of posts")->check(CLI::Range(2, 10'000'000));
  synth->add_option("--balance", balance, "Fraction of fauxtography posts")->check(CLI::Range(0.0, 1.0));

  auto* featurize = app.add_subcommand("featurize", "Dump graphs and node feature matrices as JSON lines");
  featurize->add_option("-i,--input", input, "Dataset file")->required();
  featurize->add_option("-o,--output", output, "Output file")->required();

  auto* train_cmd = app.add_subcommand("train", "Train a model");
  train_cmd->add_option("-i,--input", input, "Labeled dataset file")->required();
  train_cmd->add_option("-m,--model", model, "Model file to write")->required();
  train_cmd->add_option("--history", history, "Per-epoch CSV");
  add_train_overrides(train_cmd, overrides);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score a labeled dataset");
  evaluate_cmd->add_option("-i,--input", input, "Labeled dataset file")->required();
  evaluate_cmd->add_option("-m,--model", model, "Model file")->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--report", report, "Metrics JSON");
  evaluate_cmd->add_option("--roc", roc, "ROC curve CSV");
  evaluate_cmd->add_option("--threshold", threshold, "Decision threshold")->check(CLI::Range(0.0, 1.0));

  auto* predict_cmd = app.add_subcommand("predict", "Score one post");
  predict_cmd->add_option("-i,--input", input, "Dataset file holding the post")->required();
  predict_cmd->add_option("-m,--model", model, "Model file")->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--post-id", post_id, "Post to score when the file holds several");
  predict_cmd->add_option("--threshold", threshold, "Decision threshold")->check(CLI::Range(0.0, 1.0));

  auto* sweep = app.add_subcommand("sweep-time", "Retrain and evaluate with comments truncated to time windows");
  sweep->add_option("-i,--input", input, "Labeled dataset file")->required();
  sweep->add_option("-o,--output", output, "Metrics CSV")->required();
  sweep->add_option("--windows", windows, "Comma-separated ascending windows in seconds")->capture_default_str();
  add_train_overrides(sweep, overrides);

  auto* xval = app.add_subcommand("xval", "Stratified k-fold cross-validation");
  xval->add_option("-i,--input", input, "Labeled dataset file")->required();
  xval->add_option("-o,--output", output, "Report JSON");
  xval->add_option("-k,--folds", folds, "Number of folds")->capture_default_str()->check(CLI::Range(2, 1000));
  add_train_overrides(xval, overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*ingest) return run_ingest(ctx, input);
    if (*synth) return run_synth(ctx, output, n_posts, balance);
    if (*featurize) return run_featurize(ctx, input, output);
    if (*train_cmd) return run_train(ctx, input, model, history, overrides);
    if (*evaluate_cmd) return run_evaluate(ctx, input, model, report, roc, threshold);
    if (*predict_cmd) return run_predict(ctx, input, model, post_id, threshold);
    if (*sweep) return run_sweep(ctx, input, output, windows, overrides);
    if (*xval) return run_xval(ctx, input, output, folds, overrides);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fauxgraph::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
