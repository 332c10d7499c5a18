#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "fauxgraph/autodiff.hpp"
#include "fauxgraph/csr_matrix.hpp"
#include "fauxgraph/dense_matrix.hpp"
#include "fauxgraph/sparse.hpp"

namespace fauxgraph {

/// Network shape. The default is conv -> pool(16) -> conv -> mean readout
/// -> dense(2) -> softmax.
struct ModelConfig {
  std::size_t input_dim = 73;
  std::size_t hidden_dim = 64;
  /// Cluster count of the first pooling stage; stage s uses max(1, c >> s).
  std::size_t clusters = 16;
  std::size_t conv_layers_per_stage = 1;
  std::size_t pooling_stages = 1;
  /// Reply edges are entered in both directions before normalization. When
  /// false the directed adjacency is normalized as-is.
  bool symmetrize = true;
  std::uint64_t seed = 42;

  [[nodiscard]] std::size_t clusters_at(std::size_t stage) const;
  [[nodiscard]] std::size_t conv_layer_count() const {
    return (pooling_stages + 1) * conv_layers_per_stage;
  }
  /// Throws DataError when a dimension is zero.
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

struct ModelParams {
  /// Convolution weights in application order; the first is input_dim x hidden.
  std::vector<DenseMatrix> conv;
  /// One hidden x clusters_at(s) matrix per pooling stage.
  std::vector<DenseMatrix> assign;
  DenseMatrix dense;  // hidden x 2
  DenseMatrix bias;   // 1 x 2

  /// Seeded symmetric-uniform init with bound sqrt(6 / (fan_in + fan_out))
  /// for the convolution and assignment weights; the output head starts at
  /// zero.
  static ModelParams initialize(const ModelConfig& config);

  /// Fixed traversal order shared by the optimizer, gradients and files.
  [[nodiscard]] std::vector<const DenseMatrix*> tensors() const;
  std::vector<DenseMatrix*> tensors();
  [[nodiscard]] std::size_t parameter_count() const;
  /// Throws DimensionError unless every shape matches `config`.
  void check_shapes(const ModelConfig& config) const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Several graphs packed into one block-diagonal adjacency with row-stacked
/// features.
struct BatchedGraphs {
  SparseAdjacency adjacency;
  DenseMatrix features;
  std::vector<ad::Segment> segments;
  std::vector<int> labels;  // empty when unlabeled

  [[nodiscard]] std::size_t graph_count() const { return segments.size(); }
};

struct GraphSample {
  SparseAdjacency adjacency;
  DenseMatrix features;
};

/// Rejects an empty list and mismatched feature widths.
BatchedGraphs block_diagonal(std::span<const GraphSample> graphs, std::span<const int> labels = {});

/// D^-1/2 (I + A) D^-1/2 with D the row sums of I + A. With
/// `require_symmetric` an asymmetric A throws DataError.
SparseAdjacency normalize_adjacency(const SparseAdjacency& a, bool require_symmetric = true);

/// Propagation operator of one convolution stage: the normalized sparse
/// adjacency before pooling, stacked dense per-graph blocks after.
class Propagator {
 public:
  static Propagator sparse(std::shared_ptr<const CsrMatrix> a, std::vector<ad::Segment> segments);
  static Propagator dense_blocks(ad::Var blocks, std::vector<ad::Segment> segments);

  /// a * h
  [[nodiscard]] ad::Var apply(ad::Var h) const;
  [[nodiscard]] const std::vector<ad::Segment>& segments() const { return segments_; }
  [[nodiscard]] bool is_sparse() const { return sparse_ != nullptr; }
  [[nodiscard]] ad::Var blocks() const { return blocks_; }

 private:
  std::shared_ptr<const CsrMatrix> sparse_;
  ad::Var blocks_;
  std::vector<ad::Segment> segments_;
};

/// relu(a * h * w)
ad::Var graph_conv(const Propagator& a, ad::Var h, ad::Var w);

struct PoolResult {
  Propagator adjacency;  // c x c per graph
  ad::Var features;      // c rows per graph
  ad::Var assignment;    // rows of the input, c columns
};

/// Soft cluster assignment C = softmax(graph_conv(a, h, w_assign)) per node,
/// then per graph A' = C^T A C and H' = C^T H. Clusters never span graphs.
PoolResult cluster_pool(const Propagator& a, ad::Var h, ad::Var w_assign);

struct ForwardPass {
  std::unique_ptr<ad::Tape> tape;
  /// Parameter leaves in ModelParams::tensors() order.
  std::vector<ad::Var> params;
  /// graph_count x 2 class probabilities; column 1 is fauxtography.
  ad::Var probabilities;
};

ForwardPass forward(const BatchedGraphs& batch, const ModelParams& params, const ModelConfig& config);

/// Probability of class 1 for each graph in the batch.
std::vector<double> predict_scores(const BatchedGraphs& batch, const ModelParams& params,
                                   const ModelConfig& config);

/// Batched forward plus mean cross-entropy, with gradients for every
/// parameter in ModelParams::tensors() order.
struct LossAndGradients {
  double loss = 0.0;
  std::vector<DenseMatrix> gradients;
};
LossAndGradients loss_and_gradients(const BatchedGraphs& batch, const ModelParams& params,
                                    const ModelConfig& config);

}  // namespace fauxgraph
