#include "fauxgraph/gcnn.hpp"

#include <cmath>
#include <random>

#include "fauxgraph/error.hpp"

namespace fauxgraph {

std::size_t ModelConfig::clusters_at(std::size_t stage) const {
  const std::size_t c = stage >= 64 ? 0 : clusters >> stage;
  return c == 0 ? 1 : c;
}

void ModelConfig::validate() const {
  if (input_dim == 0 || hidden_dim == 0 || clusters == 0 || conv_layers_per_stage == 0) {
    throw DataError("model dimensions, cluster count and conv layers per stage must be >= 1");
  }
}

namespace {

DenseMatrix glorot(std::size_t fan_in, std::size_t fan_out, std::mt19937_64& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-bound, bound);
  DenseMatrix w(fan_in, fan_out);
  for (double& v : w.values()) v = dist(rng);
  return w;
}

void expect_shape(const DenseMatrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw DimensionError(what + " is " + m.shape_string() + ", expected " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
}

}  // namespace

ModelParams ModelParams::initialize(const ModelConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  ModelParams p;
  for (std::size_t i = 0; i < config.conv_layer_count(); ++i) {
    p.conv.push_back(glorot(i == 0 ? config.input_dim : config.hidden_dim, config.hidden_dim, rng));
  }
  for (std::size_t s = 0; s < config.pooling_stages; ++s) {
    p.assign.push_back(glorot(config.hidden_dim, config.clusters_at(s), rng));
  }
  // The readout is non-negative after ReLU, so a random head would add a
  // shared logit offset; starting it at zero gives uniform initial outputs.
  p.dense = DenseMatrix(config.hidden_dim, 2);
  p.bias = DenseMatrix(1, 2);
  return p;
}

std::vector<const DenseMatrix*> ModelParams::tensors() const {
  std::vector<const DenseMatrix*> out;
  for (const auto& w : conv) out.push_back(&w);
  for (const auto& w : assign) out.push_back(&w);
  out.push_back(&dense);
  out.push_back(&bias);
  return out;
}

std::vector<DenseMatrix*> ModelParams::tensors() {
  std::vector<DenseMatrix*> out;
  for (auto& w : conv) out.push_back(&w);
  for (auto& w : assign) out.push_back(&w);
  out.push_back(&dense);
  out.push_back(&bias);
  return out;
}

std::size_t ModelParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto* t : tensors()) n += t->size();
  return n;
}

void ModelParams::check_shapes(const ModelConfig& config) const {
  if (conv.size() != config.conv_layer_count() || assign.size() != config.pooling_stages) {
    throw DimensionError("parameter layer count does not match the model configuration");
  }
  for (std::size_t i = 0; i < conv.size(); ++i) {
    expect_shape(conv[i], i == 0 ? config.input_dim : config.hidden_dim, config.hidden_dim,
                 "conv weight " + std::to_string(i));
  }
  for (std::size_t s = 0; s < assign.size(); ++s) {
    expect_shape(assign[s], config.hidden_dim, config.clusters_at(s), "assignment weight " + std::to_string(s));
  }
  expect_shape(dense, config.hidden_dim, 2, "dense weight");
  expect_shape(bias, 1, 2, "dense bias");
}

BatchedGraphs block_diagonal(std::span<const GraphSample> graphs, std::span<const int> labels) {
  if (graphs.empty()) throw DataError("cannot batch an empty list of graphs");
  if (!labels.empty() && labels.size() != graphs.size()) {
    throw DimensionError(std::to_string(labels.size()) + " labels for " + std::to_string(graphs.size()) + " graphs");
  }
  const std::size_t width = graphs.front().features.cols();
  std::size_t total = 0;
  std::size_t nnz = 0;
  for (const auto& g : graphs) {
    if (g.features.cols() != width) {
      throw DimensionError("feature width " + std::to_string(g.features.cols()) + " differs from " +
                           std::to_string(width));
    }
    if (g.adjacency.dim != g.features.rows()) {
      throw DimensionError("adjacency of dimension " + std::to_string(g.adjacency.dim) + " with " +
                           std::to_string(g.features.rows()) + " feature rows");
    }
    if (g.adjacency.dim == 0) throw DataError("cannot batch a graph with no nodes");
    total += g.adjacency.dim;
    nnz += g.adjacency.entries.size();
  }

  BatchedGraphs batch;
  batch.adjacency.dim = total;
  batch.adjacency.entries.reserve(nnz);
  batch.features = DenseMatrix(total, width);
  std::size_t offset = 0;
  for (const auto& g : graphs) {
    const auto canonical = g.adjacency.is_canonical() ? g.adjacency
                                                      : SparseAdjacency::canonical(g.adjacency.dim, g.adjacency.entries);
    for (const auto& e : canonical.entries) {
      batch.adjacency.entries.push_back({e.row + offset, e.col + offset, e.value});
    }
    for (std::size_t r = 0; r < g.features.rows(); ++r) {
      const auto src = g.features.row(r);
      std::copy(src.begin(), src.end(), batch.features.row(offset + r).begin());
    }
    batch.segments.push_back({offset, g.adjacency.dim});
    offset += g.adjacency.dim;
  }
  batch.labels.assign(labels.begin(), labels.end());
  return batch;
}

SparseAdjacency normalize_adjacency(const SparseAdjacency& a, bool require_symmetric) {
  if (require_symmetric && !a.is_symmetric()) {
    throw DataError("normalize_adjacency: adjacency is not symmetric");
  }
  std::vector<SparseEntry> entries = a.entries;
  for (const auto& e : entries) {
    if (e.value < 0.0) throw DataError("normalize_adjacency: negative edge weight");
  }
  entries.reserve(entries.size() + a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) entries.push_back({i, i, 1.0});
  auto with_loops = SparseAdjacency::canonical(a.dim, std::move(entries));

  std::vector<double> degree(a.dim, 0.0);
  for (const auto& e : with_loops.entries) degree[e.row] += e.value;
  std::vector<double> inv_sqrt(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) inv_sqrt[i] = 1.0 / std::sqrt(degree[i]);
  for (auto& e : with_loops.entries) e.value *= inv_sqrt[e.row] * inv_sqrt[e.col];
  return with_loops;
}

Propagator Propagator::sparse(std::shared_ptr<const CsrMatrix> a, std::vector<ad::Segment> segments) {
  Propagator p;
  p.sparse_ = std::move(a);
  p.segments_ = std::move(segments);
  return p;
}

Propagator Propagator::dense_blocks(ad::Var blocks, std::vector<ad::Segment> segments) {
  Propagator p;
  p.blocks_ = blocks;
  p.segments_ = std::move(segments);
  return p;
}

ad::Var Propagator::apply(ad::Var h) const {
  if (sparse_) return ad::spmm(sparse_, h);
  return ad::segment_matmul(blocks_, h, segments_);
}

ad::Var graph_conv(const Propagator& a, ad::Var h, ad::Var w) { return ad::relu(ad::matmul(a.apply(h), w)); }

PoolResult cluster_pool(const Propagator& a, ad::Var h, ad::Var w_assign) {
  const auto& segs = a.segments();
  auto assignment = ad::row_softmax(graph_conv(a, h, w_assign));
  const std::size_t k = assignment.cols();
  auto pooled_adjacency = ad::segment_transpose_matmul(assignment, a.apply(assignment), segs);
  auto pooled_features = ad::segment_transpose_matmul(assignment, h, segs);
  std::vector<ad::Segment> pooled_segs;
  pooled_segs.reserve(segs.size());
  for (std::size_t m = 0; m < segs.size(); ++m) pooled_segs.push_back({m * k, k});
  return PoolResult{Propagator::dense_blocks(pooled_adjacency, std::move(pooled_segs)), pooled_features, assignment};
}

ForwardPass forward(const BatchedGraphs& batch, const ModelParams& params, const ModelConfig& config) {
  config.validate();
  params.check_shapes(config);
  if (batch.features.cols() != config.input_dim) {
    throw DimensionError("features have " + std::to_string(batch.features.cols()) + " columns, model expects " +
                         std::to_string(config.input_dim));
  }
  if (batch.adjacency.dim != batch.features.rows()) {
    throw DimensionError("batch adjacency dimension does not match feature rows");
  }

  ForwardPass pass;
  pass.tape = std::make_unique<ad::Tape>();
  auto& tape = *pass.tape;
  for (const auto* t : params.tensors()) pass.params.push_back(tape.parameter(*t));

  const std::size_t n_conv = params.conv.size();
  const std::size_t n_assign = params.assign.size();
  auto conv_w = [&](std::size_t i) { return pass.params[i]; };
  auto assign_w = [&](std::size_t s) { return pass.params[n_conv + s]; };
  const auto dense_w = pass.params[n_conv + n_assign];
  const auto bias = pass.params[n_conv + n_assign + 1];

  auto normalized = std::make_shared<const CsrMatrix>(
      CsrMatrix::from_sparse(normalize_adjacency(batch.adjacency, config.symmetrize)));
  auto prop = Propagator::sparse(std::move(normalized), batch.segments);
  auto h = tape.constant(batch.features);

  std::size_t layer = 0;
  for (std::size_t s = 0; s < config.pooling_stages; ++s) {
    for (std::size_t l = 0; l < config.conv_layers_per_stage; ++l) h = graph_conv(prop, h, conv_w(layer++));
    auto pooled = cluster_pool(prop, h, assign_w(s));
    prop = std::move(pooled.adjacency);
    h = pooled.features;
  }
  for (std::size_t l = 0; l < config.conv_layers_per_stage; ++l) h = graph_conv(prop, h, conv_w(layer++));

  auto readout = ad::segment_mean(h, prop.segments());
  auto logits = ad::add_row_bias(ad::matmul(readout, dense_w), bias);
  pass.probabilities = ad::row_softmax(logits);
  return pass;
}

std::vector<double> predict_scores(const BatchedGraphs& batch, const ModelParams& params, const ModelConfig& config) {
  const auto pass = forward(batch, params, config);
  const auto& p = pass.probabilities.value();
  std::vector<double> scores(p.rows());
  for (std::size_t r = 0; r < p.rows(); ++r) scores[r] = p(r, 1);
  return scores;
}

LossAndGradients loss_and_gradients(const BatchedGraphs& batch, const ModelParams& params,
                                    const ModelConfig& config) {
  if (batch.labels.size() != batch.graph_count()) throw DataError("loss needs one label per graph");
  auto pass = forward(batch, params, config);
  auto loss = ad::cross_entropy_loss(ad::select_column(pass.probabilities, 1), batch.labels);
  pass.tape->backward(loss);
  LossAndGradients out;
  out.loss = loss.value()(0, 0);
  for (const auto& p : pass.params) out.gradients.push_back(p.grad());
  return out;
}

}  // namespace fauxgraph
