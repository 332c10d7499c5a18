#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fauxgraph/gcnn.hpp"
#include "fauxgraph/node_features.hpp"
#include "fauxgraph/synthetic.hpp"
#include "fauxgraph/training.hpp"

namespace fauxgraph {

/// Settings for a whole run. Every section and key is optional in the JSON
/// form: {"features": {...}, "model": {...}, "train": {...}, "synth": {...}}.
struct PipelineConfig {
  FeatureConfig features;
  ModelConfig model;
  TrainConfig train;
  SyntheticConfig synth;

  /// Keeps model.input_dim in line with features.linguistic_dim.
  void sync_dimensions();
};

/// Unknown keys throw DataError so typos do not pass silently.
PipelineConfig config_from_json(std::string_view text);
PipelineConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const PipelineConfig& config);

}  // namespace fauxgraph
