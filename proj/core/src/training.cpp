#include "fauxgraph/training.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

#include "fauxgraph/error.hpp"

namespace fauxgraph {

LabeledExample make_example(const PostRecord& post, const Lexicons& lexicons, const FeatureConfig& config) {
  LabeledExample ex;
  ex.post_id = post.post_id;
  ex.graph = build_graph(post);
  ex.features = assemble_feature_matrix(ex.graph, post, lexicons, config);
  ex.label = post.label ? static_cast<int>(*post.label) : -1;
  return ex;
}

std::vector<LabeledExample> make_examples(std::span<const PostRecord> posts, const Lexicons& lexicons,
                                          const FeatureConfig& config) {
  std::vector<LabeledExample> out;
  out.reserve(posts.size());
  for (const auto& p : posts) out.push_back(make_example(p, lexicons, config));
  return out;
}

void TrainConfig::validate() const {
  if (epochs == 0) throw DataError("epochs must be >= 1");
  if (batch_size == 0) throw DataError("batch_size must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw DataError("train_fraction must lie in (0, 1)");
  if (!(adam.learning_rate > 0.0)) throw DataError("learning rate must be positive");
}

namespace {

std::vector<int> labels_of(std::span<const LabeledExample> examples) {
  std::vector<int> labels;
  labels.reserve(examples.size());
  for (const auto& e : examples) {
    if (e.label != 0 && e.label != 1) throw DataError("example '" + e.post_id + "' has no label");
    labels.push_back(e.label);
  }
  return labels;
}

std::array<std::vector<std::size_t>, 2> indices_by_class(std::span<const int> labels) {
  std::array<std::vector<std::size_t>, 2> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw DataError("labels must be 0 or 1");
    by_class[static_cast<std::size_t>(labels[i])].push_back(i);
  }
  return by_class;
}

template <typename T>
std::vector<T> gather(std::span<const T> items, std::span<const std::size_t> idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(items[i]);
  return out;
}

std::optional<std::size_t> source_flag_column(std::size_t width) {
  if (width == 0) return std::nullopt;
  return width - 1;
}

/// Examples after standardization, in the form the network consumes.
std::vector<GraphSample> to_samples(std::span<const LabeledExample> examples, const FeatureStandardizer& stats,
                                    bool symmetrize) {
  std::vector<GraphSample> samples;
  samples.reserve(examples.size());
  for (const auto& e : examples) {
    GraphSample s{adjacency(e.graph, symmetrize), e.features};
    stats.apply(s.features);
    samples.push_back(std::move(s));
  }
  return samples;
}

BatchedGraphs make_batch(std::span<const GraphSample> samples, std::span<const int> labels,
                         std::span<const std::size_t> idx) {
  std::vector<GraphSample> chosen;
  std::vector<int> chosen_labels;
  chosen.reserve(idx.size());
  for (auto i : idx) {
    chosen.push_back(samples[i]);
    if (!labels.empty()) chosen_labels.push_back(labels[i]);
  }
  return block_diagonal(chosen, chosen_labels);
}

std::vector<double> scores_for(std::span<const GraphSample> samples, const ModelParams& params,
                               const ModelConfig& config, std::size_t batch_size) {
  std::vector<double> scores;
  scores.reserve(samples.size());
  for (std::size_t start = 0; start < samples.size(); start += batch_size) {
    const auto n = std::min(batch_size, samples.size() - start);
    auto batch = block_diagonal(samples.subspan(start, n));
    const auto s = predict_scores(batch, params, config);
    scores.insert(scores.end(), s.begin(), s.end());
  }
  return scores;
}

double accuracy_of(std::span<const double> scores, std::span<const int> labels, double threshold) {
  if (scores.empty()) return std::numeric_limits<double>::quiet_NaN();
  return compute_metrics(scores, labels, threshold).accuracy;
}

void check_input_dim(std::span<const LabeledExample> examples, const ModelConfig& model_cfg) {
  for (const auto& e : examples) {
    if (e.features.cols() != model_cfg.input_dim) {
      throw DimensionError("example '" + e.post_id + "' has " + std::to_string(e.features.cols()) +
                           " feature columns, model expects " + std::to_string(model_cfg.input_dim));
    }
    if (e.features.rows() != e.graph.node_count()) {
      throw DimensionError("example '" + e.post_id + "' has feature rows that do not match its graph");
    }
  }
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

}  // namespace

Split stratified_split(std::span<const int> labels, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw DataError("train_fraction must lie in (0, 1)");
  auto by_class = indices_by_class(labels);
  std::mt19937_64 rng(seed);
  Split split;
  for (auto& idx : by_class) {
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(idx.size())));
    split.train.insert(split.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.holdout.insert(split.holdout.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.holdout.begin(), split.holdout.end());
  return split;
}

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw DataError("cross-validation needs k >= 2");
  auto by_class = indices_by_class(labels);
  for (std::size_t c = 0; c < 2; ++c) {
    if (by_class[c].size() < k) {
      throw DataError("class " + std::to_string(c) + " has " + std::to_string(by_class[c].size()) +
                      " examples, fewer than k = " + std::to_string(k));
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t position = 0;
  for (auto& idx : by_class) {
    std::shuffle(idx.begin(), idx.end(), rng);
    for (auto i : idx) folds[position++ % k].push_back(i);
  }
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

FeatureStandardizer standardize_features(std::span<LabeledExample> train_set,
                                         std::span<const std::span<LabeledExample>> apply_sets) {
  if (train_set.empty()) throw DataError("cannot standardize against an empty training set");
  std::vector<const DenseMatrix*> matrices;
  for (const auto& e : train_set) matrices.push_back(&e.features);
  auto stats = FeatureStandardizer::fit(matrices, source_flag_column(train_set.front().features.cols()));
  for (auto& e : train_set) stats.apply(e.features);
  for (auto set : apply_sets) {
    for (auto& e : set) stats.apply(e.features);
  }
  return stats;
}

TrainResult fit(std::span<const LabeledExample> train_set, std::span<const LabeledExample> holdout_set,
                const ModelConfig& model_cfg, const TrainConfig& train_cfg) {
  train_cfg.validate();
  model_cfg.validate();
  if (train_set.empty()) throw DataError("training set is empty");
  const auto train_labels = labels_of(train_set);
  const auto holdout_labels = labels_of(holdout_set);
  const auto positives = std::count(train_labels.begin(), train_labels.end(), 1);
  if (positives == 0 || positives == static_cast<std::ptrdiff_t>(train_labels.size())) {
    throw DataError("training split contains a single class; both labels are required");
  }
  check_input_dim(train_set, model_cfg);
  check_input_dim(holdout_set, model_cfg);

  FeatureStandardizer stats = FeatureStandardizer::identity(model_cfg.input_dim);
  if (train_cfg.standardize) {
    std::vector<const DenseMatrix*> matrices;
    for (const auto& e : train_set) matrices.push_back(&e.features);
    stats = FeatureStandardizer::fit(matrices, source_flag_column(model_cfg.input_dim));
  }
  const auto train_samples = to_samples(train_set, stats, model_cfg.symmetrize);
  const auto holdout_samples = to_samples(holdout_set, stats, model_cfg.symmetrize);

  TrainResult result;
  result.model.config = model_cfg;
  result.model.params = ModelParams::initialize(model_cfg);
  result.model.standardizer = stats;
  result.train_indices.resize(train_set.size());
  std::iota(result.train_indices.begin(), result.train_indices.end(), 0);
  result.holdout_indices.resize(holdout_set.size());
  std::iota(result.holdout_indices.begin(), result.holdout_indices.end(), 0);

  auto& params = result.model.params;
  const std::size_t batch_size = train_cfg.batch_size;

  auto holdout_eval = [&](double& loss) {
    const auto scores = scores_for(holdout_samples, params, model_cfg, batch_size);
    loss = scores.empty() ? std::numeric_limits<double>::quiet_NaN() : ad::binary_cross_entropy(scores, holdout_labels);
    return accuracy_of(scores, holdout_labels, train_cfg.threshold);
  };

  {
    const auto scores = scores_for(train_samples, params, model_cfg, batch_size);
    double unused = 0.0;
    result.history.push_back({0, ad::binary_cross_entropy(scores, train_labels), holdout_eval(unused)});
  }

  AdamState adam(train_cfg.adam);
  std::mt19937_64 rng(train_cfg.seed);
  std::vector<std::size_t> order(train_samples.size());
  std::iota(order.begin(), order.end(), 0);

  const bool early_stop = train_cfg.patience > 0 && !holdout_samples.empty();
  double best_loss = std::numeric_limits<double>::infinity();
  ModelParams best_params = params;
  std::size_t stale = 0;

  for (std::size_t epoch = 1; epoch <= train_cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double weighted_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const auto n = std::min(batch_size, order.size() - start);
      const auto batch = make_batch(train_samples, train_labels, std::span(order).subspan(start, n));
      const auto step = loss_and_gradients(batch, params, model_cfg);
      adam.update(params.tensors(), step.gradients);
      weighted_loss += step.loss * static_cast<double>(n);
    }
    double holdout_loss = 0.0;
    const double holdout_acc = holdout_eval(holdout_loss);
    result.history.push_back({epoch, weighted_loss / static_cast<double>(order.size()), holdout_acc});

    if (early_stop) {
      if (holdout_loss < best_loss) {
        best_loss = holdout_loss;
        best_params = params;
        stale = 0;
      } else if (++stale >= train_cfg.patience) {
        params = best_params;
        break;
      }
    }
  }
  return result;
}

TrainResult train(std::span<const LabeledExample> examples, const ModelConfig& model_cfg,
                  const TrainConfig& train_cfg) {
  train_cfg.validate();
  if (examples.size() < 2) throw DataError("training needs at least 2 examples");
  const auto labels = labels_of(examples);
  const auto split = stratified_split(labels, train_cfg.train_fraction, train_cfg.seed);
  const auto train_set = gather(examples, split.train);
  const auto holdout_set = gather(examples, split.holdout);
  auto result = fit(train_set, holdout_set, model_cfg, train_cfg);
  result.train_indices = split.train;
  result.holdout_indices = split.holdout;
  return result;
}

Prediction predict(const TrainedModel& model, const LabeledExample& example, double threshold) {
  const auto scores = predict_scores(model, std::span(&example, 1));
  return {scores.front(), classify(scores.front(), threshold)};
}

std::vector<double> predict_scores(const TrainedModel& model, std::span<const LabeledExample> examples,
                                   std::size_t batch_size) {
  check_input_dim(examples, model.config);
  if (examples.empty()) return {};
  const auto samples = to_samples(examples, model.standardizer, model.config.symmetrize);
  return scores_for(samples, model.params, model.config, std::max<std::size_t>(batch_size, 1));
}

EvalReport evaluate(const TrainedModel& model, std::span<const LabeledExample> examples, double threshold) {
  const auto labels = labels_of(examples);
  const auto scores = predict_scores(model, examples);
  return evaluate_scores(scores, labels, threshold);
}

CrossValidationReport cross_validate(std::span<const LabeledExample> examples, std::size_t k,
                                     const ModelConfig& model_cfg, const TrainConfig& train_cfg) {
  const auto labels = labels_of(examples);
  const auto folds = stratified_folds(labels, k, train_cfg.seed);
  TrainConfig fold_cfg = train_cfg;
  // The held-out fold is the test set; it must not steer training.
  fold_cfg.patience = 0;

  CrossValidationReport report;
  std::vector<double> acc, prec, rec, f1, auc;
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<std::size_t> train_idx;
    for (std::size_t g = 0; g < k; ++g) {
      if (g != f) train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    const auto train_set = gather(examples, train_idx);
    const auto test_set = gather(examples, folds[f]);
    const auto trained = fit(train_set, test_set, model_cfg, fold_cfg);
    auto fold_report = evaluate(trained.model, test_set, train_cfg.threshold);
    acc.push_back(fold_report.accuracy);
    prec.push_back(fold_report.precision);
    rec.push_back(fold_report.recall);
    f1.push_back(fold_report.f1);
    if (fold_report.auc) auc.push_back(*fold_report.auc);
    report.folds.push_back(std::move(fold_report));
  }
  report.accuracy = summarize(acc);
  report.precision = summarize(prec);
  report.recall = summarize(rec);
  report.f1 = summarize(f1);
  report.auc = summarize(auc);
  return report;
}

std::vector<WindowResult> time_sweep(std::span<const PostRecord> posts, std::span<const std::int64_t> windows,
                                     const Lexicons& lexicons, const FeatureConfig& feature_cfg,
                                     const ModelConfig& model_cfg, const TrainConfig& train_cfg) {
  if (windows.empty()) throw DataError("time sweep needs at least one window");
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (windows[i] < 0) throw DataError("time windows must be non-negative");
    if (i > 0 && windows[i] < windows[i - 1]) throw DataError("time windows must be ascending");
  }
  std::vector<WindowResult> results;
  for (auto window : windows) {
    std::vector<PostRecord> filtered;
    filtered.reserve(posts.size());
    WindowResult wr;
    wr.window_seconds = window;
    for (const auto& p : posts) {
      filtered.push_back(filter_by_window(p, window));
      wr.retained_comments += filtered.back().comments.size();
    }
    const auto examples = make_examples(filtered, lexicons, feature_cfg);
    const auto trained = train(examples, model_cfg, train_cfg);
    const auto holdout = gather(std::span<const LabeledExample>(examples), trained.holdout_indices);
    wr.report = evaluate(trained.model, holdout, train_cfg.threshold);
    results.push_back(std::move(wr));
  }
  return results;
}

}  // namespace fauxgraph
