#include "fauxgraph/csr_matrix.hpp"

#include "fauxgraph/error.hpp"

namespace fauxgraph {

CsrMatrix::CsrMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                     std::vector<std::size_t> col_idx, std::vector<double> values)
    : rows_(rows), cols_(cols), row_ptr_(std::move(row_ptr)), col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (row_ptr_.size() != rows_ + 1 || col_idx_.size() != values_.size() || row_ptr_.back() != values_.size()) {
    throw DimensionError("inconsistent CSR arrays");
  }
  for (auto c : col_idx_) {
    if (c >= cols_) throw DimensionError("CSR column index out of range");
  }
}

CsrMatrix CsrMatrix::from_sparse(const SparseAdjacency& a) {
  std::vector<std::size_t> row_ptr(a.dim + 1, 0);
  std::vector<std::size_t> col_idx;
  std::vector<double> values;
  col_idx.reserve(a.entries.size());
  values.reserve(a.entries.size());
  auto canonical = a.is_canonical() ? a : SparseAdjacency::canonical(a.dim, a.entries);
  for (const auto& e : canonical.entries) {
    ++row_ptr[e.row + 1];
    col_idx.push_back(e.col);
    values.push_back(e.value);
  }
  for (std::size_t r = 0; r < a.dim; ++r) row_ptr[r + 1] += row_ptr[r];
  return CsrMatrix(a.dim, a.dim, std::move(row_ptr), std::move(col_idx), std::move(values));
}

CsrMatrix CsrMatrix::transposed() const {
  std::vector<std::size_t> row_ptr(cols_ + 1, 0);
  for (auto c : col_idx_) ++row_ptr[c + 1];
  for (std::size_t c = 0; c < cols_; ++c) row_ptr[c + 1] += row_ptr[c];
  std::vector<std::size_t> next(row_ptr.begin(), row_ptr.end() - 1);
  std::vector<std::size_t> col_idx(nnz());
  std::vector<double> values(nnz());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const auto slot = next[col_idx_[k]]++;
      col_idx[slot] = r;
      values[slot] = values_[k];
    }
  }
  return CsrMatrix(cols_, rows_, std::move(row_ptr), std::move(col_idx), std::move(values));
}

DenseMatrix CsrMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) d(r, col_idx_[k]) += values_[k];
  }
  return d;
}

DenseMatrix CsrMatrix::multiply(const DenseMatrix& h) const {
  if (cols_ != h.rows()) {
    throw DimensionError("spmm shape mismatch: sparse " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                         " * dense " + h.shape_string());
  }
  DenseMatrix out(rows_, h.cols());
  const std::size_t n = h.cols();
  for (std::size_t r = 0; r < rows_; ++r) {
    double* o = out.row(r).data();
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const double a = values_[k];
      const double* hr = h.row(col_idx_[k]).data();
      for (std::size_t j = 0; j < n; ++j) o[j] += a * hr[j];
    }
  }
  return out;
}

DenseMatrix CsrMatrix::transpose_multiply(const DenseMatrix& h) const {
  if (rows_ != h.rows()) {
    throw DimensionError("spmm^T shape mismatch: sparse^T " + std::to_string(cols_) + "x" + std::to_string(rows_) +
                         " * dense " + h.shape_string());
  }
  DenseMatrix out(cols_, h.cols());
  const std::size_t n = h.cols();
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* hr = h.row(r).data();
    for (auto k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const double a = values_[k];
      double* o = out.row(col_idx_[k]).data();
      for (std::size_t j = 0; j < n; ++j) o[j] += a * hr[j];
    }
  }
  return out;
}

}  // namespace fauxgraph
