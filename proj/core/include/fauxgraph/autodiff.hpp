#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fauxgraph/csr_matrix.hpp"
#include "fauxgraph/dense_matrix.hpp"

namespace fauxgraph::ad {

class Tape;

/// Handle to a node recorded on a Tape. Cheap to copy; valid while the tape
/// lives.
class Var {
 public:
  Var() = default;

  [[nodiscard]] const DenseMatrix& value() const;
  [[nodiscard]] const DenseMatrix& grad() const;
  [[nodiscard]] std::size_t rows() const { return value().rows(); }
  [[nodiscard]] std::size_t cols() const { return value().cols(); }
  [[nodiscard]] Tape* tape() const { return tape_; }
  [[nodiscard]] std::size_t id() const { return id_; }
  [[nodiscard]] bool valid() const { return tape_ != nullptr; }

 private:
  friend class Tape;
  Var(Tape* tape, std::size_t id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  std::size_t id_ = 0;
};

/// Contiguous row range of one graph inside a batch.
struct Segment {
  std::size_t start = 0;
  std::size_t length = 0;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Records a computation graph in creation order (which is a topological
/// order) and sweeps it in reverse to accumulate gradients.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, std::size_t self)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Leaf whose gradient is tracked (trainable weights).
  Var parameter(DenseMatrix value);
  /// Leaf that never receives a gradient (inputs).
  Var constant(DenseMatrix value);

  /// Records an operation output. `inputs` lists the nodes `backward`
  /// propagates into; the node needs a gradient iff one of them does.
  Var record(std::string op, DenseMatrix value, std::vector<std::size_t> inputs, BackwardFn backward);

  /// Reverse sweep from a 1x1 output. Clears gradients from a previous sweep.
  void backward(Var loss);

  [[nodiscard]] const DenseMatrix& value(std::size_t id) const { return nodes_.at(id).value; }
  /// Throws Error if backward() has not run since the node was recorded.
  [[nodiscard]] const DenseMatrix& grad(std::size_t id) const;
  [[nodiscard]] bool requires_grad(std::size_t id) const { return nodes_.at(id).requires_grad; }
  [[nodiscard]] const std::string& op(std::size_t id) const { return nodes_.at(id).op; }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }

  /// Adds `delta` into the gradient buffer of node `id` (used by backward fns).
  void accumulate(std::size_t id, const DenseMatrix& delta);
  DenseMatrix& grad_buffer(std::size_t id);

 private:
  struct Node {
    std::string op;
    DenseMatrix value;
    DenseMatrix grad;
    std::vector<std::size_t> inputs;
    BackwardFn backward;
    bool requires_grad = false;
    bool grad_ready = false;
  };

  std::vector<Node> nodes_;
};

// Differentiable operations. All operands must live on the same tape.

/// a * h for a constant sparse matrix a; d/dh = a^T * up.
Var spmm(const CsrMatrix& a, Var h);
/// Same, sharing ownership of `a` with the tape instead of copying it.
Var spmm(std::shared_ptr<const CsrMatrix> a, Var h);
Var matmul(Var x, Var y);
Var relu(Var x);
/// Softmax across each row with max subtraction.
Var row_softmax(Var x);
/// 1 x cols mean of the rows; rejects zero-row input.
Var mean_rows(Var x);
/// One output row per segment: the mean of that segment's rows.
Var segment_mean(Var x, std::span<const Segment> segments);
/// x + broadcast of a 1 x cols bias row.
Var add_row_bias(Var x, Var bias);
/// Column j as an N x 1 matrix.
Var select_column(Var x, std::size_t j);
/// Sum of all entries as 1 x 1.
Var sum(Var x);
/// For each segment m: c_m^T * x_m, where c_m / x_m are the segment's rows.
/// Output stacks the c.cols() x x.cols() blocks.
Var segment_transpose_matmul(Var c, Var x, std::span<const Segment> segments);
/// For each segment m: a_m * h_m, where a_m is the square block of `a`
/// occupying the segment's rows (a is sum(len) x max len, stacked blocks).
Var segment_matmul(Var a, Var h, std::span<const Segment> segments);

inline constexpr double kProbabilityClamp = 1e-12;

/// Mean binary cross-entropy of N x 1 probabilities against 0/1 labels,
/// with probabilities clamped to [eps, 1 - eps].
Var cross_entropy_loss(Var probabilities, std::span<const int> labels);

/// Closed-form value of the loss above, for checking and reporting.
double binary_cross_entropy(std::span<const double> probabilities, std::span<const int> labels);

}  // namespace fauxgraph::ad
