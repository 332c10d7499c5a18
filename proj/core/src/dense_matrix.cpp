#include "fauxgraph/dense_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "fauxgraph/error.hpp"

namespace fauxgraph {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw DimensionError("matrix " + shape_string() + " given " + std::to_string(values_.size()) + " values");
  }
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  values_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    values_.insert(values_.end(), r.begin(), r.end());
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool DenseMatrix::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

std::string DenseMatrix::shape_string() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

DenseMatrix multiply(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.cols() != y.rows()) {
    throw DimensionError("matmul shape mismatch: " + x.shape_string() + " * " + y.shape_string());
  }
  DenseMatrix out(x.rows(), y.cols());
  const std::size_t n = y.cols();
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double* o = out.row(i).data();
    for (std::size_t k = 0; k < x.cols(); ++k) {
      const double a = x(i, k);
      if (a == 0.0) continue;
      const double* yr = y.row(k).data();
      for (std::size_t j = 0; j < n; ++j) o[j] += a * yr[j];
    }
  }
  return out;
}

DenseMatrix multiply_nt(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.cols() != y.cols()) {
    throw DimensionError("matmul shape mismatch: " + x.shape_string() + " * (" + y.shape_string() + ")^T");
  }
  DenseMatrix out(x.rows(), y.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto xr = x.row(i);
    for (std::size_t j = 0; j < y.rows(); ++j) {
      const auto yr = y.row(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < xr.size(); ++k) acc += xr[k] * yr[k];
      out(i, j) = acc;
    }
  }
  return out;
}

DenseMatrix multiply_tn(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.rows() != y.rows()) {
    throw DimensionError("matmul shape mismatch: (" + x.shape_string() + ")^T * " + y.shape_string());
  }
  DenseMatrix out(x.cols(), y.cols());
  const std::size_t n = y.cols();
  for (std::size_t k = 0; k < x.rows(); ++k) {
    const double* yr = y.row(k).data();
    for (std::size_t i = 0; i < x.cols(); ++i) {
      const double a = x(k, i);
      if (a == 0.0) continue;
      double* o = out.row(i).data();
      for (std::size_t j = 0; j < n; ++j) o[j] += a * yr[j];
    }
  }
  return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("cannot compare " + a.shape_string() + " with " + b.shape_string());
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  return worst;
}

}  // namespace fauxgraph
