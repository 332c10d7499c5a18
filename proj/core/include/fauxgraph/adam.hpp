#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fauxgraph/dense_matrix.hpp"

namespace fauxgraph {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  friend bool operator==(const AdamConfig&, const AdamConfig&) = default;
};

/// Moment estimates for a list of parameter matrices.
class AdamState {
 public:
  AdamState() = default;
  explicit AdamState(AdamConfig config) : config_(config) {}

  [[nodiscard]] std::int64_t step() const { return step_; }
  [[nodiscard]] const AdamConfig& config() const { return config_; }
  [[nodiscard]] const std::vector<DenseMatrix>& first_moment() const { return m_; }
  [[nodiscard]] const std::vector<DenseMatrix>& second_moment() const { return v_; }

  /// One bias-corrected Adam update of `params` in place. Moment buffers are
  /// created on the first call; later calls must pass the same shapes.
  void update(std::span<DenseMatrix* const> params, std::span<const DenseMatrix> grads);
  void update(std::span<DenseMatrix> params, std::span<const DenseMatrix> grads);

 private:
  AdamConfig config_;
  std::int64_t step_ = 0;
  std::vector<DenseMatrix> m_;
  std::vector<DenseMatrix> v_;
};

}  // namespace fauxgraph
