#include "fauxgraph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fauxgraph/error.hpp"

namespace fauxgraph {

namespace {

void check_inputs(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw DimensionError(std::to_string(scores.size()) + " scores vs " + std::to_string(labels.size()) + " labels");
  }
  if (scores.empty()) throw DataError("metrics need at least one example");
  for (int y : labels) {
    if (y != 0 && y != 1) throw DataError("labels must be 0 or 1");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) throw DataError("scores must be finite");
  }
}

double ratio(std::size_t num, std::size_t den, bool& degenerate) {
  if (den == 0) {
    degenerate = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionCounts confusion(std::span<const double> scores, std::span<const int> labels, double threshold) {
  check_inputs(scores, labels);
  ConfusionCounts c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = classify(scores[i], threshold);
    const bool actual = labels[i] == 1;
    if (predicted && actual) ++c.tp;
    else if (predicted) ++c.fp;
    else if (actual) ++c.fn;
    else ++c.tn;
  }
  return c;
}

EvalReport metrics_from_counts(const ConfusionCounts& counts) {
  EvalReport r;
  r.counts = counts;
  bool unused = false;
  r.accuracy = ratio(counts.tp + counts.tn, counts.total(), unused);
  r.precision = ratio(counts.tp, counts.tp + counts.fp, r.degenerate.precision);
  r.recall = ratio(counts.tp, counts.tp + counts.fn, r.degenerate.recall);
  if (r.precision + r.recall > 0.0) {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  } else {
    r.degenerate.f1 = true;
  }
  r.fpr = ratio(counts.fp, counts.fp + counts.tn, r.degenerate.fpr);
  r.fnr = ratio(counts.fn, counts.fn + counts.tp, r.degenerate.fnr);
  return r;
}

EvalReport compute_metrics(std::span<const double> scores, std::span<const int> labels, double threshold) {
  return metrics_from_counts(confusion(scores, labels, threshold));
}

RocCurve roc_auc(std::span<const double> scores, std::span<const int> labels) {
  check_inputs(scores, labels);
  const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  const std::size_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw DataError("ROC/AUC requires both classes in the labels (got " + std::to_string(positives) +
                    " positive, " + std::to_string(negatives) + " negative)");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::size_t tp = 0;
  std::size_t fp = 0;
  const auto p = static_cast<double>(positives);
  const auto n = static_cast<double>(negatives);
  for (std::size_t i = 0; i < order.size();) {
    const double s = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == s; ++i) {
      if (labels[order[i]] == 1) ++tp;
      else ++fp;
    }
    const RocPoint next{static_cast<double>(fp) / n, static_cast<double>(tp) / p};
    const auto& prev = curve.points.back();
    curve.auc += (next.fpr - prev.fpr) * (next.tpr + prev.tpr) / 2.0;
    curve.points.push_back(next);
  }
  return curve;
}

EvalReport evaluate_scores(std::span<const double> scores, std::span<const int> labels, double threshold) {
  auto report = compute_metrics(scores, labels, threshold);
  if (report.counts.tp + report.counts.fn > 0 && report.counts.tn + report.counts.fp > 0) {
    auto curve = roc_auc(scores, labels);
    report.roc = std::move(curve.points);
    report.auc = curve.auc;
  }
  return report;
}

bool is_consistent(const EvalReport& report, double tolerance) {
  if (report.counts.total() == 0) return false;
  const auto expected = metrics_from_counts(report.counts);
  auto close = [&](double a, double b) { return std::abs(a - b) <= tolerance; };
  if (!close(report.accuracy, expected.accuracy) || !close(report.precision, expected.precision) ||
      !close(report.recall, expected.recall) || !close(report.f1, expected.f1) || !close(report.fpr, expected.fpr) ||
      !close(report.fnr, expected.fnr) || report.degenerate != expected.degenerate) {
    return false;
  }
  if (report.auc && (*report.auc < 0.0 || *report.auc > 1.0)) return false;
  for (std::size_t i = 1; i < report.roc.size(); ++i) {
    if (report.roc[i].fpr < report.roc[i - 1].fpr || report.roc[i].tpr < report.roc[i - 1].tpr) return false;
  }
  return true;
}

}  // namespace fauxgraph
