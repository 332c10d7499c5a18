#include "fauxgraph/model_io.hpp"

#include <fstream>
#include <sstream>

#include "fauxgraph/error.hpp"
#include "json_codec.hpp"

namespace fauxgraph {

using detail::Json;
using detail::ObjectReader;
using detail::OrderedJson;

std::string model_to_json(const ModelBundle& bundle) {
  OrderedJson j;
  j["format_version"] = kModelFormatVersion;
  j["train_seed"] = bundle.train_seed;
  j["features"] = detail::to_json(bundle.features);
  j["model"] = detail::to_json(bundle.model.config);

  const auto& st = bundle.model.standardizer;
  OrderedJson stats;
  stats["mean"] = st.mean();
  stats["scale"] = st.scale();
  OrderedJson active = OrderedJson::array();
  for (bool a : st.active()) active.push_back(a);
  stats["active"] = std::move(active);
  j["standardizer"] = std::move(stats);

  const auto& p = bundle.model.params;
  OrderedJson params;
  OrderedJson conv = OrderedJson::array();
  for (const auto& w : p.conv) conv.push_back(detail::to_json(w));
  OrderedJson assign = OrderedJson::array();
  for (const auto& w : p.assign) assign.push_back(detail::to_json(w));
  params["conv"] = std::move(conv);
  params["assign"] = std::move(assign);
  params["dense"] = detail::to_json(p.dense);
  params["bias"] = detail::to_json(p.bias);
  j["params"] = std::move(params);
  return j.dump(1) + "\n";
}

ModelBundle model_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("model file is not valid JSON: ") + e.what());
  }
  ObjectReader<FormatError> r(j, "model_file");
  const auto version = r.integer("format_version");
  if (version != kModelFormatVersion) {
    throw FormatError("model file format_version " + std::to_string(version) + " is not supported (expected " +
                      std::to_string(kModelFormatVersion) + ")");
  }
  ModelBundle b;
  b.train_seed = r.unsigned64("train_seed");
  b.features = FeatureConfig{};
  detail::read_into<FormatError>(r.raw("features"), "model_file.features", b.features);
  detail::read_into<FormatError>(r.raw("model"), "model_file.model", b.model.config);

  {
    ObjectReader<FormatError> s(r.raw("standardizer"), "model_file.standardizer");
    const auto& mean = s.raw("mean");
    const auto& scale = s.raw("scale");
    const auto& active = s.raw("active");
    if (!mean.is_array() || !scale.is_array() || !active.is_array()) {
      throw FormatError("model_file.standardizer fields must be arrays");
    }
    std::vector<double> m, sc;
    std::vector<bool> ac;
    try {
      m = mean.get<std::vector<double>>();
      sc = scale.get<std::vector<double>>();
      ac = active.get<std::vector<bool>>();
    } catch (const Json::exception& e) {
      throw FormatError(std::string("model_file.standardizer: ") + e.what());
    }
    try {
      b.model.standardizer = FeatureStandardizer(std::move(m), std::move(sc), std::move(ac));
    } catch (const Error& e) {
      throw FormatError(std::string("model_file.standardizer: ") + e.what());
    }
    s.reject_unknown();
  }

  {
    ObjectReader<FormatError> p(r.raw("params"), "model_file.params");
    const auto& conv = p.raw("conv");
    const auto& assign = p.raw("assign");
    if (!conv.is_array() || !assign.is_array()) throw FormatError("model_file.params layers must be arrays");
    for (std::size_t i = 0; i < conv.size(); ++i) {
      b.model.params.conv.push_back(detail::matrix_from_json<FormatError>(conv[i], "conv[" + std::to_string(i) + "]"));
    }
    for (std::size_t i = 0; i < assign.size(); ++i) {
      b.model.params.assign.push_back(
          detail::matrix_from_json<FormatError>(assign[i], "assign[" + std::to_string(i) + "]"));
    }
    b.model.params.dense = detail::matrix_from_json<FormatError>(p.raw("dense"), "dense");
    b.model.params.bias = detail::matrix_from_json<FormatError>(p.raw("bias"), "bias");
    p.reject_unknown();
  }
  r.reject_unknown();

  try {
    b.model.config.validate();
    b.model.params.check_shapes(b.model.config);
  } catch (const Error& e) {
    throw FormatError(std::string("model file is inconsistent: ") + e.what());
  }
  if (b.model.standardizer.width() != b.model.config.input_dim ||
      FeatureLayout{b.features.linguistic_dim}.width() != b.model.config.input_dim) {
    throw FormatError("model file is inconsistent: feature width does not match the model input dimension");
  }
  return b;
}

void save_model(const std::filesystem::path& path, const ModelBundle& bundle) {
  const auto text = model_to_json(bundle);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write model file " + path.string());
  out << text;
  if (!out) throw FormatError("failed while writing model file " + path.string());
}

ModelBundle load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace fauxgraph
