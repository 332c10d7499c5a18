#include "fauxgraph/standardize.hpp"

#include <cmath>

#include "fauxgraph/error.hpp"

namespace fauxgraph {

FeatureStandardizer::FeatureStandardizer(std::vector<double> mean, std::vector<double> scale,
                                         std::vector<bool> active)
    : mean_(std::move(mean)), scale_(std::move(scale)), active_(std::move(active)) {
  if (mean_.size() != scale_.size() || mean_.size() != active_.size()) {
    throw DimensionError("standardizer statistics have inconsistent lengths");
  }
  for (std::size_t c = 0; c < scale_.size(); ++c) {
    if (active_[c] && !(scale_[c] > 0.0)) throw DataError("standardizer scale must be positive");
  }
}

FeatureStandardizer FeatureStandardizer::fit(std::span<const DenseMatrix* const> matrices,
                                             std::optional<std::size_t> exempt_column) {
  if (matrices.empty()) throw DataError("cannot fit feature statistics on an empty training set");
  const std::size_t width = matrices.front()->cols();
  std::vector<double> sum(width, 0.0);
  std::size_t rows = 0;
  for (const auto* m : matrices) {
    if (m->cols() != width) throw DimensionError("feature matrices have different widths");
    for (std::size_t r = 0; r < m->rows(); ++r) {
      const auto row = m->row(r);
      for (std::size_t c = 0; c < width; ++c) sum[c] += row[c];
    }
    rows += m->rows();
  }
  if (rows == 0) throw DataError("cannot fit feature statistics on zero rows");
  std::vector<double> mean(width);
  for (std::size_t c = 0; c < width; ++c) mean[c] = sum[c] / static_cast<double>(rows);
  std::vector<double> sq(width, 0.0);
  for (const auto* m : matrices) {
    for (std::size_t r = 0; r < m->rows(); ++r) {
      const auto row = m->row(r);
      for (std::size_t c = 0; c < width; ++c) sq[c] += (row[c] - mean[c]) * (row[c] - mean[c]);
    }
  }
  std::vector<double> scale(width, 1.0);
  std::vector<bool> active(width, false);
  for (std::size_t c = 0; c < width; ++c) {
    const double var = sq[c] / static_cast<double>(rows);
    if (var >= kMinVariance && exempt_column != c) {
      active[c] = true;
      scale[c] = std::sqrt(var);
    } else {
      mean[c] = 0.0;
    }
  }
  return FeatureStandardizer(std::move(mean), std::move(scale), std::move(active));
}

FeatureStandardizer FeatureStandardizer::identity(std::size_t width) {
  return FeatureStandardizer(std::vector<double>(width, 0.0), std::vector<double>(width, 1.0),
                             std::vector<bool>(width, false));
}

void FeatureStandardizer::apply(DenseMatrix& m) const {
  if (m.cols() != width()) {
    throw DimensionError("standardizer fitted on " + std::to_string(width()) + " columns, got " + m.shape_string());
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (active_[c]) row[c] = (row[c] - mean_[c]) / scale_[c];
    }
  }
}

void FeatureStandardizer::invert(DenseMatrix& m) const {
  if (m.cols() != width()) {
    throw DimensionError("standardizer fitted on " + std::to_string(width()) + " columns, got " + m.shape_string());
  }
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (active_[c]) row[c] = row[c] * scale_[c] + mean_[c];
    }
  }
}

}  // namespace fauxgraph
