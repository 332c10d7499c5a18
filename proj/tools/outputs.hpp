#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "fauxgraph/metrics.hpp"
#include "fauxgraph/training.hpp"

namespace fauxgraph::cli {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

std::string report_json(const EvalReport& report);
std::string cross_validation_json(const CrossValidationReport& report);
std::string prediction_json(const std::string& post_id, const Prediction& p);
std::string feature_record_json(const LabeledExample& example);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_history_csv(const std::filesystem::path& path, std::span<const EpochRecord> history);
void write_roc_csv(const std::filesystem::path& path, std::span<const RocPoint> points);
void write_sweep_csv(const std::filesystem::path& path, std::span<const WindowResult> rows);

}  // namespace fauxgraph::cli
