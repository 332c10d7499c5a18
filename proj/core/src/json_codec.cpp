#include "json_codec.hpp"

namespace fauxgraph::detail {

namespace {

constexpr auto kSize = [](auto& r, const std::string& k) { return r.size(k); };
constexpr auto kBool = [](auto& r, const std::string& k) { return r.boolean(k); };
constexpr auto kNumber = [](auto& r, const std::string& k) { return r.number(k); };
constexpr auto kU64 = [](auto& r, const std::string& k) { return r.unsigned64(k); };

}  // namespace

OrderedJson to_json(const FeatureConfig& c) {
  OrderedJson j;
  j["linguistic_dim"] = c.linguistic_dim;
  j["log_endorsement"] = c.log_endorsement;
  j["hash_seed"] = c.hash_seed;
  return j;
}

OrderedJson to_json(const ModelConfig& c) {
  OrderedJson j;
  j["input_dim"] = c.input_dim;
  j["hidden_dim"] = c.hidden_dim;
  j["clusters"] = c.clusters;
  j["conv_layers_per_stage"] = c.conv_layers_per_stage;
  j["pooling_stages"] = c.pooling_stages;
  j["symmetrize"] = c.symmetrize;
  j["seed"] = c.seed;
  return j;
}

OrderedJson to_json(const TrainConfig& c) {
  OrderedJson j;
  j["epochs"] = c.epochs;
  j["batch_size"] = c.batch_size;
  j["learning_rate"] = c.adam.learning_rate;
  j["beta1"] = c.adam.beta1;
  j["beta2"] = c.adam.beta2;
  j["epsilon"] = c.adam.epsilon;
  j["seed"] = c.seed;
  j["train_fraction"] = c.train_fraction;
  j["standardize"] = c.standardize;
  j["patience"] = c.patience;
  j["threshold"] = c.threshold;
  return j;
}

OrderedJson to_json(const ClassProfile& p) {
  OrderedJson j;
  j["min_comments"] = p.min_comments;
  j["max_comments"] = p.max_comments;
  j["direct_reply_prob"] = p.direct_reply_prob;
  j["chain_prob"] = p.chain_prob;
  j["hub_prob"] = p.hub_prob;
  j["base_likes"] = p.base_likes;
  j["hub_likes"] = p.hub_likes;
  j["verity_rate"] = p.verity_rate;
  j["image_rate"] = p.image_rate;
  j["negative_rate"] = p.negative_rate;
  j["positive_rate"] = p.positive_rate;
  j["url_prob"] = p.url_prob;
  j["question_prob"] = p.question_prob;
  j["exclamation_prob"] = p.exclamation_prob;
  j["mean_delay_seconds"] = p.mean_delay_seconds;
  return j;
}

OrderedJson to_json(const SyntheticConfig& c) {
  OrderedJson j;
  j["n_posts"] = c.n_posts;
  j["class_balance"] = c.class_balance;
  j["seed"] = c.seed;
  j["fauxtography"] = to_json(c.fauxtography);
  j["genuine"] = to_json(c.genuine);
  return j;
}

OrderedJson to_json(const DenseMatrix& m) {
  OrderedJson rows = OrderedJson::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    OrderedJson row = OrderedJson::array();
    for (double v : m.row(r)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename ErrorT>
void read_into(const Json& j, const std::string& path, FeatureConfig& out) {
  ObjectReader<ErrorT> r(j, path);
  r.optional("linguistic_dim", out.linguistic_dim, kSize);
  r.optional("log_endorsement", out.log_endorsement, kBool);
  r.optional("hash_seed", out.hash_seed, kU64);
  r.reject_unknown();
}

template <typename ErrorT>
void read_into(const Json& j, const std::string& path, ModelConfig& out) {
  ObjectReader<ErrorT> r(j, path);
  r.optional("input_dim", out.input_dim, kSize);
  r.optional("hidden_dim", out.hidden_dim, kSize);
  r.optional("clusters", out.clusters, kSize);
  r.optional("conv_layers_per_stage", out.conv_layers_per_stage, kSize);
  r.optional("pooling_stages", out.pooling_stages, kSize);
  r.optional("symmetrize", out.symmetrize, kBool);
  r.optional("seed", out.seed, kU64);
  r.reject_unknown();
}

template <typename ErrorT>
void read_into(const Json& j, const std::string& path, TrainConfig& out) {
  ObjectReader<ErrorT> r(j, path);
  r.optional("epochs", out.epochs, kSize);
  r.optional("batch_size", out.batch_size, kSize);
  r.optional("learning_rate", out.adam.learning_rate, kNumber);
  r.optional("beta1", out.adam.beta1, kNumber);
  r.optional("beta2", out.adam.beta2, kNumber);
  r.optional("epsilon", out.adam.epsilon, kNumber);
  r.optional("seed", out.seed, kU64);
  r.optional("train_fraction", out.train_fraction, kNumber);
  r.optional("standardize", out.standardize, kBool);
  r.optional("patience", out.patience, kSize);
  r.optional("threshold", out.threshold, kNumber);
  r.reject_unknown();
}

template <typename ErrorT>
void read_into(const Json& j, const std::string& path, ClassProfile& out) {
  ObjectReader<ErrorT> r(j, path);
  r.optional("min_comments", out.min_comments, kSize);
  r.optional("max_comments", out.max_comments, kSize);
  r.optional("direct_reply_prob", out.direct_reply_prob, kNumber);
  r.optional("chain_prob", out.chain_prob, kNumber);
  r.optional("hub_prob", out.hub_prob, kNumber);
  r.optional("base_likes", out.base_likes, kNumber);
  r.optional("hub_likes", out.hub_likes, kNumber);
  r.optional("verity_rate", out.verity_rate, kNumber);
  r.optional("image_rate", out.image_rate, kNumber);
  r.optional("negative_rate", out.negative_rate, kNumber);
  r.optional("positive_rate", out.positive_rate, kNumber);
  r.optional("url_prob", out.url_prob, kNumber);
  r.optional("question_prob", out.question_prob, kNumber);
  r.optional("exclamation_prob", out.exclamation_prob, kNumber);
  r.optional("mean_delay_seconds", out.mean_delay_seconds, kNumber);
  r.reject_unknown();
}

template <typename ErrorT>
void read_into(const Json& j, const std::string& path, SyntheticConfig& out) {
  ObjectReader<ErrorT> r(j, path);
  r.optional("n_posts", out.n_posts, kSize);
  r.optional("class_balance", out.class_balance, kNumber);
  r.optional("seed", out.seed, kU64);
  if (r.has("fauxtography")) read_into<ErrorT>(r.raw("fauxtography"), r.where("fauxtography"), out.fauxtography);
  if (r.has("genuine")) read_into<ErrorT>(r.raw("genuine"), r.where("genuine"), out.genuine);
  r.mark_seen("fauxtography");
  r.mark_seen("genuine");
  r.reject_unknown();
}

template <typename ErrorT>
DenseMatrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ErrorT(path + ": expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j.front().is_array()) throw ErrorT(path + ": expected rows to be arrays");
  const std::size_t cols = j.front().size();
  DenseMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != cols) throw ErrorT(path + ": ragged or malformed row " + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number()) throw ErrorT(path + ": non-numeric entry");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

#define FAUXGRAPH_INSTANTIATE(E)                                                    \
  template void read_into<E>(const Json&, const std::string&, FeatureConfig&);      \
  template void read_into<E>(const Json&, const std::string&, ModelConfig&);        \
  template void read_into<E>(const Json&, const std::string&, TrainConfig&);        \
  template void read_into<E>(const Json&, const std::string&, ClassProfile&);       \
  template void read_into<E>(const Json&, const std::string&, SyntheticConfig&);    \
  template DenseMatrix matrix_from_json<E>(const Json&, const std::string&);

FAUXGRAPH_INSTANTIATE(DataError)
FAUXGRAPH_INSTANTIATE(FormatError)

#undef FAUXGRAPH_INSTANTIATE

}  // namespace fauxgraph::detail
