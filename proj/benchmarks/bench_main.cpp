#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "fauxgraph/csr_matrix.hpp"
#include "fauxgraph/gcnn.hpp"
#include "fauxgraph/synthetic.hpp"
#include "fauxgraph/training.hpp"

using namespace fauxgraph;

namespace {

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  DenseMatrix m(rows, cols);
  for (double& v : m.values()) v = d(rng);
  return m;
}

// Reply-tree adjacency over n nodes, symmetrized.
SparseAdjacency random_tree(std::size_t n, std::mt19937_64& rng) {
  std::vector<SparseEntry> entries;
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t parent = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
    entries.push_back({parent, v, 1.0});
    entries.push_back({v, parent, 1.0});
  }
  return SparseAdjacency::canonical(n, std::move(entries));
}

BatchedGraphs random_batch(std::size_t graphs, std::size_t nodes, std::size_t width, std::mt19937_64& rng) {
  std::vector<GraphSample> samples;
  std::vector<int> labels;
  for (std::size_t i = 0; i < graphs; ++i) {
    samples.push_back({random_tree(nodes, rng), random_matrix(nodes, width, rng)});
    labels.push_back(static_cast<int>(i % 2));
  }
  return block_diagonal(samples, labels);
}

void BM_Spmm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = CsrMatrix::from_sparse(normalize_adjacency(random_tree(n, rng)));
  const auto h = random_matrix(n, 64, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a.multiply(h));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.nnz()) * 64);
}
BENCHMARK(BM_Spmm)->Arg(256)->Arg(4096)->Arg(65536);

void BM_Forward(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const ModelConfig cfg;
  const auto params = ModelParams::initialize(cfg);
  const auto batch = random_batch(32, static_cast<std::size_t>(state.range(0)), cfg.input_dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(predict_scores(batch, params, cfg));
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_Forward)->Arg(16)->Arg(48)->Unit(benchmark::kMicrosecond);

void BM_TrainStep(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const ModelConfig cfg;
  auto params = ModelParams::initialize(cfg);
  const auto batch = random_batch(32, static_cast<std::size_t>(state.range(0)), cfg.input_dim, rng);
  AdamState adam;
  for (auto _ : state) {
    const auto lg = loss_and_gradients(batch, params, cfg);
    adam.update(params.tensors(), lg.gradients);
  }
  state.SetItemsProcessed(state.iterations() * 32);
}
BENCHMARK(BM_TrainStep)->Arg(16)->Arg(48)->Unit(benchmark::kMicrosecond);

void BM_Featurize(benchmark::State& state) {
  SyntheticConfig synth;
  synth.n_posts = 64;
  const auto posts = generate_synthetic(synth);
  const FeatureConfig features;
  for (auto _ : state) benchmark::DoNotOptimize(make_examples(posts, Lexicons::defaults(), features));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(posts.size()));
}
BENCHMARK(BM_Featurize)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
