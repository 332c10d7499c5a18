#include "fauxgraph/adam.hpp"

#include <cmath>

#include "fauxgraph/error.hpp"

namespace fauxgraph {

void AdamState::update(std::span<DenseMatrix> params, std::span<const DenseMatrix> grads) {
  std::vector<DenseMatrix*> ptrs;
  ptrs.reserve(params.size());
  for (auto& p : params) ptrs.push_back(&p);
  update(std::span<DenseMatrix* const>(ptrs), grads);
}

void AdamState::update(std::span<DenseMatrix* const> params, std::span<const DenseMatrix> grads) {
  if (params.size() != grads.size()) {
    throw DimensionError("adam: " + std::to_string(params.size()) + " parameters but " +
                         std::to_string(grads.size()) + " gradients");
  }
  if (m_.empty()) {
    for (const auto* p : params) {
      m_.emplace_back(p->rows(), p->cols());
      v_.emplace_back(p->rows(), p->cols());
    }
  }
  if (m_.size() != params.size()) throw DimensionError("adam: parameter list changed between steps");
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& p = *params[i];
    if (p.rows() != grads[i].rows() || p.cols() != grads[i].cols() || p.rows() != m_[i].rows() ||
        p.cols() != m_[i].cols()) {
      throw DimensionError("adam: shape mismatch at parameter " + std::to_string(i) + " (" + p.shape_string() +
                           " vs gradient " + grads[i].shape_string() + ")");
    }
  }

  ++step_;
  const auto& c = config_;
  const double t = static_cast<double>(step_);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto p = params[i]->values();
    auto g = grads[i].values();
    auto m = m_[i].values();
    auto v = v_[i].values();
    for (std::size_t k = 0; k < p.size(); ++k) {
      m[k] = c.beta1 * m[k] + (1.0 - c.beta1) * g[k];
      v[k] = c.beta2 * v[k] + (1.0 - c.beta2) * g[k] * g[k];
      const double m_hat = m[k] / correction1;
      const double v_hat = v[k] / correction2;
      p[k] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
    }
  }
}

}  // namespace fauxgraph
