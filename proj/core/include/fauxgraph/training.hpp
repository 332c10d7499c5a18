#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fauxgraph/adam.hpp"
#include "fauxgraph/comment_graph.hpp"
#include "fauxgraph/dense_matrix.hpp"
#include "fauxgraph/gcnn.hpp"
#include "fauxgraph/metrics.hpp"
#include "fauxgraph/node_features.hpp"
#include "fauxgraph/records.hpp"
#include "fauxgraph/standardize.hpp"
#include "fauxgraph/text.hpp"

namespace fauxgraph {

/// One post ready for the network. label is 1 for fauxtography, 0 otherwise,
/// -1 when unknown.
struct LabeledExample {
  std::string post_id;
  CommentGraph graph;
  DenseMatrix features;
  int label = -1;
};

LabeledExample make_example(const PostRecord& post, const Lexicons& lexicons,
                            const FeatureConfig& config);
std::vector<LabeledExample> make_examples(std::span<const PostRecord> posts, const Lexicons& lexicons,
                                          const FeatureConfig& config);

struct TrainConfig {
  std::size_t epochs = 50;
  std::size_t batch_size = 32;
  AdamConfig adam;
  std::uint64_t seed = 7;
  double train_fraction = 0.8;
  bool standardize = true;
  /// Stop after this many epochs without holdout-loss improvement and keep
  /// the best parameters. 0 disables early stopping.
  std::size_t patience = 0;
  double threshold = 0.5;

  void validate() const;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

struct EpochRecord {
  /// Epoch 0 is the untrained model.
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double holdout_accuracy = 0.0;

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

/// Everything needed to score new examples.
struct TrainedModel {
  ModelConfig config;
  ModelParams params;
  FeatureStandardizer standardizer;
};

struct TrainResult {
  TrainedModel model;
  std::vector<EpochRecord> history;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> holdout_indices;
};

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> holdout;
};

/// Per-class seeded shuffle; each class contributes round(fraction * n_c)
/// examples to the training side.
Split stratified_split(std::span<const int> labels, double train_fraction, std::uint64_t seed);

/// k folds; each class is dealt round-robin after a seeded shuffle so fold
/// sizes differ by at most one. Throws DataError when a class has fewer than
/// k members.
std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels, std::size_t k,
                                                       std::uint64_t seed);

/// Fits per-column statistics on the training examples (source flag column
/// exempt) and applies them to every set in place.
FeatureStandardizer standardize_features(std::span<LabeledExample> train_set,
                                         std::span<const std::span<LabeledExample>> apply_sets);

/// Stratified split by train_cfg.train_fraction, then fit(). Throws DataError
/// on fewer than 2 examples or a single-class training split.
TrainResult train(std::span<const LabeledExample> examples, const ModelConfig& model_cfg,
                  const TrainConfig& train_cfg);

/// Trains on `train_set`, reporting holdout accuracy per epoch.
TrainResult fit(std::span<const LabeledExample> train_set, std::span<const LabeledExample> holdout_set,
                const ModelConfig& model_cfg, const TrainConfig& train_cfg);

struct Prediction {
  double probability = 0.0;
  bool label = false;
};

/// Standardizes a copy of the example's features and runs the network.
Prediction predict(const TrainedModel& model, const LabeledExample& example, double threshold = 0.5);
/// Class-1 probabilities for many examples, batched.
std::vector<double> predict_scores(const TrainedModel& model, std::span<const LabeledExample> examples,
                                   std::size_t batch_size = 64);

EvalReport evaluate(const TrainedModel& model, std::span<const LabeledExample> examples,
                    double threshold = 0.5);

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;
};

struct CrossValidationReport {
  std::vector<EvalReport> folds;
  MetricSummary accuracy;
  MetricSummary precision;
  MetricSummary recall;
  MetricSummary f1;
  MetricSummary auc;
};

/// Stratified k-fold evaluation; every fold trains from a fresh
/// initialization with statistics fitted on its own training portion.
CrossValidationReport cross_validate(std::span<const LabeledExample> examples, std::size_t k,
                                     const ModelConfig& model_cfg, const TrainConfig& train_cfg);

struct WindowResult {
  std::int64_t window_seconds = 0;
  std::size_t retained_comments = 0;
  EvalReport report;
};

/// For each window: truncate every post's comments, rebuild graphs and
/// features, retrain with the same seed and split, evaluate on the holdout.
/// Windows must be non-empty and ascending.
std::vector<WindowResult> time_sweep(std::span<const PostRecord> posts, std::span<const std::int64_t> windows,
                                     const Lexicons& lexicons, const FeatureConfig& feature_cfg,
                                     const ModelConfig& model_cfg, const TrainConfig& train_cfg);

}  // namespace fauxgraph
