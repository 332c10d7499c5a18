#include "fauxgraph/config.hpp"

#include <fstream>
#include <sstream>

#include "fauxgraph/error.hpp"
#include "json_codec.hpp"

namespace fauxgraph {

void PipelineConfig::sync_dimensions() { model.input_dim = FeatureLayout{features.linguistic_dim}.width(); }

PipelineConfig config_from_json(std::string_view text) {
  detail::Json j;
  try {
    j = detail::Json::parse(text);
  } catch (const detail::Json::parse_error& e) {
    throw DataError(std::string("config is not valid JSON: ") + e.what());
  }
  PipelineConfig cfg;
  detail::ObjectReader<DataError> r(j, "config");
  if (r.has("features")) detail::read_into<DataError>(r.raw("features"), "config.features", cfg.features);
  if (r.has("model")) detail::read_into<DataError>(r.raw("model"), "config.model", cfg.model);
  if (r.has("train")) detail::read_into<DataError>(r.raw("train"), "config.train", cfg.train);
  if (r.has("synth")) detail::read_into<DataError>(r.raw("synth"), "config.synth", cfg.synth);
  for (const char* key : {"features", "model", "train", "synth"}) r.mark_seen(key);
  r.reject_unknown();
  cfg.sync_dimensions();
  cfg.model.validate();
  cfg.train.validate();
  cfg.synth.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

std::string config_to_json(const PipelineConfig& config) {
  detail::OrderedJson j;
  j["features"] = detail::to_json(config.features);
  j["model"] = detail::to_json(config.model);
  j["train"] = detail::to_json(config.train);
  j["synth"] = detail::to_json(config.synth);
  return j.dump(2) + "\n";
}

}  // namespace fauxgraph
