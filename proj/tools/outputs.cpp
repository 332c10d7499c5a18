#include "outputs.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fauxgraph/error.hpp"

namespace fauxgraph::cli {

namespace {

using Json = nlohmann::ordered_json;

Json metric_or_null(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

Json report_object(const EvalReport& r) {
  Json j;
  j["examples"] = r.counts.total();
  j["counts"] = {{"tp", r.counts.tp}, {"fp", r.counts.fp}, {"tn", r.counts.tn}, {"fn", r.counts.fn}};
  j["accuracy"] = r.accuracy;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["fpr"] = r.fpr;
  j["fnr"] = r.fnr;
  j["auc"] = metric_or_null(r.auc);
  j["degenerate"] = {{"precision", r.degenerate.precision},
                     {"recall", r.degenerate.recall},
                     {"f1", r.degenerate.f1},
                     {"fpr", r.degenerate.fpr},
                     {"fnr", r.degenerate.fnr}};
  return j;
}

Json summary_object(const MetricSummary& s) { return {{"mean", s.mean}, {"stddev", s.stddev}}; }

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw DataError("failed while writing " + path.string());
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

std::string report_json(const EvalReport& report) { return report_object(report).dump(2) + "\n"; }

std::string cross_validation_json(const CrossValidationReport& report) {
  Json j;
  j["folds"] = Json::array();
  for (const auto& f : report.folds) j["folds"].push_back(report_object(f));
  j["accuracy"] = summary_object(report.accuracy);
  j["precision"] = summary_object(report.precision);
  j["recall"] = summary_object(report.recall);
  j["f1"] = summary_object(report.f1);
  j["auc"] = summary_object(report.auc);
  return j.dump(2) + "\n";
}

std::string prediction_json(const std::string& post_id, const Prediction& p) {
  Json j;
  j["post_id"] = post_id;
  j["probability"] = p.probability;
  j["label"] = p.label;
  return j.dump();
}

std::string feature_record_json(const LabeledExample& example) {
  Json j;
  j["post_id"] = example.post_id;
  j["label"] = example.label < 0 ? Json(nullptr) : Json(example.label == 1);
  j["node_ids"] = example.graph.node_ids;
  Json edges = Json::array();
  for (const auto& [parent, child] : example.graph.edges) edges.push_back({parent, child});
  j["edges"] = std::move(edges);
  Json rows = Json::array();
  for (std::size_t r = 0; r < example.features.rows(); ++r) {
    const auto row = example.features.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  j["features"] = std::move(rows);
  return j.dump();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_for_write(path);
  out << text;
  finish(out, path);
}

void write_history_csv(const std::filesystem::path& path, std::span<const EpochRecord> history) {
  auto out = open_for_write(path);
  out << "epoch,train_loss,holdout_accuracy\n";
  for (const auto& h : history) {
    out << h.epoch << ',' << format_double(h.train_loss) << ',' << format_double(h.holdout_accuracy) << '\n';
  }
  finish(out, path);
}

void write_roc_csv(const std::filesystem::path& path, std::span<const RocPoint> points) {
  auto out = open_for_write(path);
  out << "fpr,tpr\n";
  for (const auto& p : points) out << format_double(p.fpr) << ',' << format_double(p.tpr) << '\n';
  finish(out, path);
}

void write_sweep_csv(const std::filesystem::path& path, std::span<const WindowResult> rows) {
  auto out = open_for_write(path);
  out << "window_seconds,accuracy,precision,recall,f1,auc\n";
  for (const auto& w : rows) {
    const auto& r = w.report;
    out << w.window_seconds << ',' << format_double(r.accuracy) << ',' << format_double(r.precision) << ','
        << format_double(r.recall) << ',' << format_double(r.f1) << ','
        << (r.auc ? format_double(*r.auc) : std::string()) << '\n';
  }
  finish(out, path);
}

}  // namespace fauxgraph::cli
