// Single-graph forward pass written with nested vectors and plain loops. It
// uses no library kernels and no tape, only the parameter containers.
#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fauxgraph/gcnn.hpp"
#include "fauxgraph/sparse.hpp"

namespace fauxgraph::testing {

using Grid = std::vector<std::vector<double>>;

inline Grid grid(std::size_t r, std::size_t c) { return Grid(r, std::vector<double>(c, 0.0)); }

inline Grid to_grid(const DenseMatrix& m) {
  Grid g = grid(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
  return g;
}

inline Grid grid_mm(const Grid& a, const Grid& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = inner == 0 ? 0 : b[0].size();
  Grid out = grid(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k < inner; ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline Grid grid_t(const Grid& a) {
  Grid out = grid(a.empty() ? 0 : a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
  return out;
}

inline Grid grid_softmax(Grid a) {
  for (auto& row : a) {
    double hi = row[0];
    for (double v : row) hi = std::max(hi, v);
    double total = 0.0;
    for (double& v : row) total += (v = std::exp(v - hi));
    for (double& v : row) v /= total;
  }
  return a;
}

inline Grid grid_conv(const Grid& a, const Grid& h, const DenseMatrix& w) {
  Grid out = grid_mm(grid_mm(a, h), to_grid(w));
  for (auto& row : out)
    for (double& v : row) v = v > 0.0 ? v : 0.0;
  return out;
}

/// Renormalized adjacency of a raw 0/1 adjacency, as a dense grid.
inline Grid reference_normalized(const SparseAdjacency& raw) {
  const std::size_t n = raw.dim;
  Grid a = grid(n, n);
  for (const auto& e : raw.entries) a[e.row][e.col] += e.value;
  for (std::size_t i = 0; i < n; ++i) a[i][i] += 1.0;
  std::vector<double> deg(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) deg[i] += a[i][j];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] /= std::sqrt(deg[i] * deg[j]);
  return a;
}

/// Class probabilities {p0, p1} of one graph.
inline std::pair<double, double> reference_forward(const SparseAdjacency& raw, const DenseMatrix& features,
                                                   const ModelParams& params, const ModelConfig& config) {
  Grid a = reference_normalized(raw);
  Grid h = to_grid(features);
  std::size_t layer = 0;
  for (std::size_t s = 0; s < config.pooling_stages; ++s) {
    for (std::size_t l = 0; l < config.conv_layers_per_stage; ++l) h = grid_conv(a, h, params.conv.at(layer++));
    const Grid c = grid_softmax(grid_conv(a, h, params.assign.at(s)));
    const Grid ct = grid_t(c);
    a = grid_mm(grid_mm(ct, a), c);
    h = grid_mm(ct, h);
  }
  for (std::size_t l = 0; l < config.conv_layers_per_stage; ++l) h = grid_conv(a, h, params.conv.at(layer++));
  Grid pooled = grid(1, h[0].size());
  for (const auto& row : h)
    for (std::size_t j = 0; j < row.size(); ++j) pooled[0][j] += row[j] / static_cast<double>(h.size());
  Grid logits = grid_mm(pooled, to_grid(params.dense));
  for (std::size_t j = 0; j < 2; ++j) logits[0][j] += params.bias(0, j);
  const Grid p = grid_softmax(logits);
  return {p[0][0], p[0][1]};
}

}  // namespace fauxgraph::testing
