#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fauxgraph {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  [[nodiscard]] std::size_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Set when the metric's denominator was zero; the metric is then reported as 0.
struct DegenerateFlags {
  bool precision = false;
  bool recall = false;
  bool f1 = false;
  bool fpr = false;
  bool fnr = false;

  [[nodiscard]] bool any() const { return precision || recall || f1 || fpr || fnr; }
  friend bool operator==(const DegenerateFlags&, const DegenerateFlags&) = default;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;

  friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

struct EvalReport {
  ConfusionCounts counts;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double fpr = 0.0;
  double fnr = 0.0;
  DegenerateFlags degenerate;
  std::vector<RocPoint> roc;
  /// Present when both classes occur in the labels.
  std::optional<double> auc;
};

/// Predicted label for a class-1 probability; a tie with the threshold is positive.
inline bool classify(double probability, double threshold = 0.5) { return probability >= threshold; }

ConfusionCounts confusion(std::span<const double> scores, std::span<const int> labels, double threshold);
EvalReport metrics_from_counts(const ConfusionCounts& counts);
/// Threshold metrics without ROC. Throws DimensionError on length mismatch
/// and DataError on empty input.
EvalReport compute_metrics(std::span<const double> scores, std::span<const int> labels,
                           double threshold = 0.5);

/// ROC points at every distinct score (with the (0,0) and (1,1) ends) and
/// trapezoidal AUC, which equals the Mann-Whitney statistic with ties
/// counted one half. Throws DataError unless both classes are present.
RocCurve roc_auc(std::span<const double> scores, std::span<const int> labels);

/// compute_metrics plus ROC/AUC when both classes are present.
EvalReport evaluate_scores(std::span<const double> scores, std::span<const int> labels,
                           double threshold = 0.5);

/// Metric fields agree with the stored counts.
bool is_consistent(const EvalReport& report, double tolerance = 1e-12);

}  // namespace fauxgraph
