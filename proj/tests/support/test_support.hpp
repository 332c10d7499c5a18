// Shared generators and reference computations for the test suites. Nothing
// here calls into the code paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fauxgraph/comment_graph.hpp"
#include "fauxgraph/dense_matrix.hpp"
#include "fauxgraph/gcnn.hpp"
#include "fauxgraph/sparse.hpp"

namespace fauxgraph::testing {

inline DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  DenseMatrix m(rows, cols);
  for (double& v : m.values()) v = d(rng);
  return m;
}

/// Random reply tree: node v >= 1 replies to a uniformly chosen earlier node.
inline CommentGraph random_tree(std::size_t nodes, std::mt19937_64& rng) {
  CommentGraph g;
  g.post_id = "rand";
  g.node_ids.emplace_back();
  for (std::size_t v = 1; v < nodes; ++v) {
    g.node_ids.push_back("c" + std::to_string(v));
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    g.edges.emplace_back(parent(rng), v);
  }
  return g;
}

/// Random symmetric 0/1 adjacency without diagonal.
inline SparseAdjacency random_symmetric(std::size_t n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution edge(density);
  std::vector<SparseEntry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (edge(rng)) {
        entries.push_back({i, j, 1.0});
        entries.push_back({j, i, 1.0});
      }
    }
  }
  return SparseAdjacency::canonical(n, std::move(entries));
}

/// Adjacency of `a` after relabeling node v as perm[v].
inline SparseAdjacency permute(const SparseAdjacency& a, const std::vector<std::size_t>& perm) {
  std::vector<SparseEntry> entries;
  for (const auto& e : a.entries) entries.push_back({perm[e.row], perm[e.col], e.value});
  return SparseAdjacency::canonical(a.dim, std::move(entries));
}

inline DenseMatrix permute_rows(const DenseMatrix& m, const std::vector<std::size_t>& perm) {
  DenseMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto src = m.row(r);
    std::copy(src.begin(), src.end(), out.row(perm[r]).begin());
  }
  return out;
}

inline std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Textbook triple loop.
inline DenseMatrix naive_matmul(const DenseMatrix& x, const DenseMatrix& y) {
  DenseMatrix out(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < y.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < x.cols(); ++k) acc += x(i, k) * y(k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

inline DenseMatrix densify(const SparseAdjacency& a) {
  DenseMatrix d(a.dim, a.dim);
  for (const auto& e : a.entries) d(e.row, e.col) += e.value;
  return d;
}

/// Relative error with an absolute floor: gradients smaller than `floor`
/// are compared on an absolute scale.
inline double relative_error(double analytic, double numeric, double floor = 1e-6) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), floor});
}

/// Central difference of `f` with respect to every entry of `x`.
inline DenseMatrix central_difference(const std::function<double(const DenseMatrix&)>& f, const DenseMatrix& x,
                                      double h = 1e-5) {
  DenseMatrix grad(x.rows(), x.cols());
  DenseMatrix probe = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = probe.values()[i];
    probe.values()[i] = orig + h;
    const double up = f(probe);
    probe.values()[i] = orig - h;
    const double down = f(probe);
    probe.values()[i] = orig;
    grad.values()[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

/// Central differences of a loss with respect to every model parameter, in
/// ModelParams::tensors() order.
inline std::vector<DenseMatrix> parameter_central_differences(
    const ModelParams& params, const std::function<double(const ModelParams&)>& loss, double h = 1e-5) {
  std::vector<DenseMatrix> out;
  ModelParams probe = params;
  auto tensors = probe.tensors();
  for (auto* t : tensors) {
    DenseMatrix g(t->rows(), t->cols());
    for (std::size_t i = 0; i < t->size(); ++i) {
      const double orig = t->values()[i];
      t->values()[i] = orig + h;
      const double up = loss(probe);
      t->values()[i] = orig - h;
      const double down = loss(probe);
      t->values()[i] = orig;
      g.values()[i] = (up - down) / (2.0 * h);
    }
    out.push_back(std::move(g));
  }
  return out;
}

/// Seeded parameters with a random output head. The library starts the head
/// at zero, which would make every forward output 0.5 and every upstream
/// gradient vanish.
inline ModelParams random_params(const ModelConfig& config) {
  ModelParams p = ModelParams::initialize(config);
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (double& v : p.dense.values()) v = d(rng);
  for (double& v : p.bias.values()) v = 0.5 * d(rng);
  return p;
}

/// Small model used where every parameter is finite-differenced.
inline ModelConfig small_model(std::size_t input_dim, std::uint64_t seed) {
  ModelConfig c;
  c.input_dim = input_dim;
  c.hidden_dim = 8;
  c.clusters = 3;
  c.seed = seed;
  return c;
}

}  // namespace fauxgraph::testing
