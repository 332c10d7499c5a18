#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fauxgraph/error.hpp"
#include "fauxgraph/synthetic.hpp"
#include "fauxgraph/training.hpp"

namespace fauxgraph {
namespace {

struct SmallCorpus {
  FeatureConfig features;
  ModelConfig model;
  TrainConfig train;
  std::vector<PostRecord> posts;
  std::vector<LabeledExample> examples;

  explicit SmallCorpus(std::size_t n = 40) {
    features.linguistic_dim = 16;
    model.input_dim = FeatureLayout{16}.width();
    model.hidden_dim = 8;
    model.clusters = 4;
    train.epochs = 3;
    train.batch_size = 8;
    SyntheticConfig synth;
    synth.n_posts = n;
    synth.seed = 77;
    synth.fauxtography.max_comments = 16;
    synth.genuine.max_comments = 16;
    posts = generate_synthetic(synth);
    examples = make_examples(posts, Lexicons::defaults(), features);
  }

  std::vector<int> labels() const {
    std::vector<int> y;
    for (const auto& e : examples) y.push_back(e.label);
    return y;
  }
};

TEST(Standardizer, ConstantColumnUntouchedAndClosedForm) {
  const DenseMatrix m{{0.0, 5.0}, {2.0, 5.0}};
  const DenseMatrix* sets[] = {&m};
  const auto s = FeatureStandardizer::fit(sets);
  auto out = m;
  s.apply(out);
  EXPECT_EQ(out, (DenseMatrix{{-1.0, 5.0}, {1.0, 5.0}}));
  EXPECT_FALSE(s.active()[1]);
}

TEST(Standardizer, ExemptColumnAndRoundTrip) {
  std::mt19937_64 rng(51);
  std::normal_distribution<double> d(3.0, 2.0);
  DenseMatrix train(20, 4), held(7, 4);
  for (double& v : train.values()) v = d(rng);
  for (double& v : held.values()) v = d(rng);
  const DenseMatrix* sets[] = {&train};
  const auto s = FeatureStandardizer::fit(sets, 3);
  EXPECT_FALSE(s.active()[3]);
  auto copy = held;
  s.apply(copy);
  for (std::size_t r = 0; r < 7; ++r) EXPECT_EQ(copy(r, 3), held(r, 3));
  s.invert(copy);
  EXPECT_LE(max_abs_diff(copy, held), 1e-12);
  auto t = train;
  s.apply(t);
  for (std::size_t c = 0; c < 3; ++c) {
    double mean = 0.0, sq = 0.0;
    for (std::size_t r = 0; r < 20; ++r) mean += t(r, c) / 20.0;
    for (std::size_t r = 0; r < 20; ++r) sq += (t(r, c) - mean) * (t(r, c) - mean) / 20.0;
    EXPECT_NEAR(mean, 0.0, 1e-12);
    EXPECT_NEAR(sq, 1.0, 1e-12);
  }
}

TEST(Standardizer, EmptyTrainSetRejected) {
  EXPECT_THROW(FeatureStandardizer::fit(std::span<const DenseMatrix* const>{}), DataError);
}

TEST(Split, StratifiedAndDisjoint) {
  std::vector<int> y(37);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = i % 3 == 0;
  const auto split = stratified_split(y, 0.8, 5);
  EXPECT_EQ(split.train.size() + split.holdout.size(), y.size());
  std::vector<std::size_t> all = split.train;
  all.insert(all.end(), split.holdout.begin(), split.holdout.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i], i);
  const double pos = std::count(y.begin(), y.end(), 1);
  std::size_t train_pos = 0;
  for (auto i : split.train) train_pos += y[i];
  EXPECT_LE(std::abs(static_cast<double>(train_pos) - 0.8 * pos), 1.0);
  EXPECT_EQ(split.train, stratified_split(y, 0.8, 5).train);
}

TEST(Folds, SizesDifferByAtMostOne) {
  std::vector<int> y(23);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = i < 11;
  const auto folds = stratified_folds(y, 5, 3);
  ASSERT_EQ(folds.size(), 5u);
  std::size_t lo = y.size(), hi = 0, total = 0;
  for (const auto& f : folds) {
    lo = std::min(lo, f.size());
    hi = std::max(hi, f.size());
    total += f.size();
  }
  EXPECT_LE(hi - lo, 1u);
  EXPECT_EQ(total, y.size());
}

TEST(Folds, TooFewMembersRejected) {
  const std::vector<int> y{1, 1, 1, 0, 0, 0};
  EXPECT_THROW(stratified_folds(y, 6, 1), DataError);
  EXPECT_THROW(stratified_folds(y, 1, 1), DataError);
}

TEST(Train, DeterministicHistoryAndParameters) {
  SmallCorpus c;
  const auto a = train(c.examples, c.model, c.train);
  const auto b = train(c.examples, c.model, c.train);
  EXPECT_EQ(a.history, b.history);
  EXPECT_EQ(a.model.params, b.model.params);
  EXPECT_EQ(a.history.size(), c.train.epochs + 1);
  EXPECT_EQ(a.history.front().epoch, 0u);
}

TEST(Train, EpochZeroLossNearChance) {
  SmallCorpus c;
  const auto r = train(c.examples, c.model, c.train);
  EXPECT_NEAR(r.history.front().train_loss, std::log(2.0), 0.15);
}

TEST(Train, SingleClassRejected) {
  SmallCorpus c;
  std::vector<LabeledExample> positives;
  for (const auto& e : c.examples)
    if (e.label == 1) positives.push_back(e);
  EXPECT_THROW(train(positives, c.model, c.train), DataError);
  EXPECT_THROW(train(std::span(c.examples).first(1), c.model, c.train), DataError);
}

TEST(Train, LossDecreasesOnSeparableData) {
  SmallCorpus c(60);
  c.train.epochs = 15;
  c.train.adam.learning_rate = 0.01;
  const auto r = train(c.examples, c.model, c.train);
  EXPECT_LT(r.history.back().train_loss, r.history.front().train_loss);
}

TEST(Predict, ThresholdAndWidth) {
  SmallCorpus c;
  const auto r = train(c.examples, c.model, c.train);
  const auto& ex = c.examples.front();
  const auto p = predict(r.model, ex);
  EXPECT_GE(p.probability, 0.0);
  EXPECT_LE(p.probability, 1.0);
  EXPECT_EQ(p.label, p.probability >= 0.5);
  EXPECT_TRUE(predict(r.model, ex, 0.0).label);
  const auto batched = predict_scores(r.model, c.examples, 7);
  for (std::size_t i = 0; i < c.examples.size(); ++i) {
    EXPECT_NEAR(batched[i], predict(r.model, c.examples[i]).probability, 1e-12);
  }
  auto narrow = ex;
  narrow.features = DenseMatrix(ex.features.rows(), ex.features.cols() - 1);
  EXPECT_THROW(predict(r.model, narrow), DimensionError);
}

TEST(Predict, SourceOnlyGraph) {
  SmallCorpus c;
  const auto r = train(c.examples, c.model, c.train);
  PostRecord empty;
  empty.post_id = "bare";
  const auto p = predict(r.model, make_example(empty, Lexicons::defaults(), c.features));
  EXPECT_TRUE(std::isfinite(p.probability));
}

TEST(Evaluate, ReportIsConsistent) {
  SmallCorpus c;
  const auto r = train(c.examples, c.model, c.train);
  const auto report = evaluate(r.model, c.examples);
  EXPECT_EQ(report.counts.total(), c.examples.size());
  EXPECT_TRUE(is_consistent(report));
  EXPECT_TRUE(report.auc.has_value());
}

TEST(CrossValidate, MeanOfFolds) {
  SmallCorpus c;
  c.train.epochs = 2;
  const auto cv = cross_validate(c.examples, 4, c.model, c.train);
  ASSERT_EQ(cv.folds.size(), 4u);
  double mean = 0.0;
  for (const auto& f : cv.folds) mean += f.accuracy / 4.0;
  EXPECT_NEAR(cv.accuracy.mean, mean, 1e-12);
  EXPECT_GE(cv.accuracy.stddev, 0.0);
}

TEST(TimeSweep, MonotoneRetentionAndFullWindowIdentity) {
  SmallCorpus c;
  c.train.epochs = 2;
  const std::vector<std::int64_t> windows{1800, 6 * 3600, 100L * 24 * 3600};
  const auto sweep = time_sweep(c.posts, windows, Lexicons::defaults(), c.features, c.model, c.train);
  ASSERT_EQ(sweep.size(), 3u);
  EXPECT_LE(sweep[0].retained_comments, sweep[1].retained_comments);
  EXPECT_LE(sweep[1].retained_comments, sweep[2].retained_comments);
  std::size_t all = 0;
  for (const auto& p : c.posts) all += p.comments.size();
  EXPECT_EQ(sweep[2].retained_comments, all);

  const auto full = train(c.examples, c.model, c.train);
  std::vector<LabeledExample> holdout;
  for (auto i : full.holdout_indices) holdout.push_back(c.examples[i]);
  const auto expected = evaluate(full.model, holdout);
  EXPECT_EQ(sweep[2].report.counts, expected.counts);
  EXPECT_EQ(sweep[2].report.auc, expected.auc);
}

TEST(TimeSweep, WindowsMustAscend) {
  SmallCorpus c;
  const std::vector<std::int64_t> windows{3600, 60};
  EXPECT_THROW(time_sweep(c.posts, windows, Lexicons::defaults(), c.features, c.model, c.train), DataError);
}

}  // namespace
}  // namespace fauxgraph
