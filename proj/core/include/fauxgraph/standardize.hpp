#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fauxgraph/dense_matrix.hpp"

namespace fauxgraph {

/// Per-column z-scoring fitted on training rows only. Columns whose
/// variance is below kMinVariance, and the exempt column, pass through.
class FeatureStandardizer {
 public:
  static constexpr double kMinVariance = 1e-12;

  FeatureStandardizer() = default;
  FeatureStandardizer(std::vector<double> mean, std::vector<double> scale, std::vector<bool> active);

  /// Population statistics over every row of every matrix. Throws DataError
  /// on an empty set and DimensionError on mixed widths.
  static FeatureStandardizer fit(std::span<const DenseMatrix* const> matrices,
                                 std::optional<std::size_t> exempt_column = std::nullopt);
  /// Leaves every column untouched.
  static FeatureStandardizer identity(std::size_t width);

  [[nodiscard]] std::size_t width() const { return mean_.size(); }
  [[nodiscard]] const std::vector<double>& mean() const { return mean_; }
  [[nodiscard]] const std::vector<double>& scale() const { return scale_; }
  [[nodiscard]] const std::vector<bool>& active() const { return active_; }

  void apply(DenseMatrix& m) const;
  void invert(DenseMatrix& m) const;

  friend bool operator==(const FeatureStandardizer&, const FeatureStandardizer&) = default;

 private:
  std::vector<double> mean_;
  std::vector<double> scale_;
  std::vector<bool> active_;
};

}  // namespace fauxgraph
