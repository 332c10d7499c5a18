#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "fauxgraph/node_features.hpp"
#include "fauxgraph/training.hpp"

namespace fauxgraph {

inline constexpr int kModelFormatVersion = 1;

/// Contents of a model file.
struct ModelBundle {
  FeatureConfig features;
  TrainedModel model;
  std::uint64_t train_seed = 0;
};

std::string model_to_json(const ModelBundle& bundle);
/// Throws FormatError on malformed JSON, missing fields, bad shapes, or a
/// format_version other than kModelFormatVersion.
ModelBundle model_from_json(std::string_view text);

void save_model(const std::filesystem::path& path, const ModelBundle& bundle);
ModelBundle load_model(const std::filesystem::path& path);

}  // namespace fauxgraph
