#pragma once

#include <cstddef>
#include <vector>

#include "fauxgraph/dense_matrix.hpp"
#include "fauxgraph/sparse.hpp"

namespace fauxgraph {

/// Compressed sparse row matrix used on the hot path of message passing.
class CsrMatrix {
 public:
  CsrMatrix() = default;
  CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
            std::vector<std::size_t> col_idx, std::vector<double> values);

  static CsrMatrix from_sparse(const SparseAdjacency& a);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t nnz() const { return values_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
  [[nodiscard]] const std::vector<std::size_t>& col_idx() const { return col_idx_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }

  [[nodiscard]] CsrMatrix transposed() const;
  [[nodiscard]] DenseMatrix to_dense() const;

  /// out = this * h
  [[nodiscard]] DenseMatrix multiply(const DenseMatrix& h) const;
  /// out = this^T * h, without materializing the transpose.
  [[nodiscard]] DenseMatrix transpose_multiply(const DenseMatrix& h) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

}  // namespace fauxgraph
