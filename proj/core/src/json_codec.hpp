// Internal JSON helpers shared by the dataset, model and config codecs.
#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>

#include "fauxgraph/error.hpp"
#include "fauxgraph/gcnn.hpp"
#include "fauxgraph/node_features.hpp"
#include "fauxgraph/synthetic.hpp"
#include "fauxgraph/training.hpp"
#include "json.hpp"

namespace fauxgraph::detail {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Reads typed fields out of one JSON object and remembers which keys were
/// consumed, so callers can reject or count the rest. Errors are raised as
/// `ErrorT` with the object path in the message.
template <typename ErrorT>
class ObjectReader {
 public:
  ObjectReader(const Json& object, std::string path) : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) throw ErrorT(path_ + ": expected a JSON object");
  }

  [[nodiscard]] bool has(const std::string& key) const {
    return object_.contains(key) && !object_.at(key).is_null();
  }

  const Json& raw(const std::string& key) {
    seen_.insert(key);
    if (!object_.contains(key)) throw ErrorT(path_ + ": missing field '" + key + "'");
    return object_.at(key);
  }

  std::string string(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_string()) throw ErrorT(where(key) + " must be a string");
    return v.template get<std::string>();
  }

  std::int64_t integer(const std::string& key) {
    const auto& v = raw(key);
    if (v.is_number_unsigned()) {
      const auto u = v.template get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(INT64_MAX)) throw ErrorT(where(key) + " is out of range");
      return static_cast<std::int64_t>(u);
    }
    if (!v.is_number_integer()) throw ErrorT(where(key) + " must be an integer");
    return v.template get<std::int64_t>();
  }

  std::int64_t non_negative(const std::string& key) {
    const auto v = integer(key);
    if (v < 0) throw ErrorT(where(key) + " must be >= 0");
    return v;
  }

  std::size_t size(const std::string& key) { return static_cast<std::size_t>(non_negative(key)); }

  std::uint64_t unsigned64(const std::string& key) {
    const auto& v = raw(key);
    if (v.is_number_unsigned()) return v.template get<std::uint64_t>();
    if (v.is_number_integer() && v.template get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.template get<std::int64_t>());
    throw ErrorT(where(key) + " must be a non-negative integer");
  }

  double number(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_number()) throw ErrorT(where(key) + " must be a number");
    return v.template get<double>();
  }

  bool boolean(const std::string& key) {
    const auto& v = raw(key);
    if (!v.is_boolean()) throw ErrorT(where(key) + " must be a boolean");
    return v.template get<bool>();
  }

  /// Assigns `target` only when the key is present and non-null.
  template <typename T, typename Fn>
  void optional(const std::string& key, T& target, Fn&& read) {
    if (has(key)) {
      target = read(*this, key);
    } else {
      seen_.insert(key);
    }
  }

  void mark_seen(const std::string& key) { seen_.insert(key); }

  [[nodiscard]] std::size_t unknown_count() const {
    std::size_t n = 0;
    for (const auto& item : object_.items()) {
      if (!seen_.contains(item.key())) ++n;
    }
    return n;
  }

  void reject_unknown() const {
    for (const auto& item : object_.items()) {
      if (!seen_.contains(item.key())) throw ErrorT(path_ + ": unknown field '" + item.key() + "'");
    }
  }

  [[nodiscard]] std::string where(const std::string& key) const { return path_ + "." + key; }

 private:
  const Json& object_;
  std::string path_;
  std::set<std::string> seen_;
};

OrderedJson to_json(const FeatureConfig& c);
OrderedJson to_json(const ModelConfig& c);
OrderedJson to_json(const TrainConfig& c);
OrderedJson to_json(const ClassProfile& p);
OrderedJson to_json(const SyntheticConfig& c);
OrderedJson to_json(const DenseMatrix& m);

/// Partial readers: keys absent from `j` keep the value already in `out`.
template <typename ErrorT>
void read_into(const Json& j, const std::string& path, FeatureConfig& out);
template <typename ErrorT>
void read_into(const Json& j, const std::string& path, ModelConfig& out);
template <typename ErrorT>
void read_into(const Json& j, const std::string& path, TrainConfig& out);
template <typename ErrorT>
void read_into(const Json& j, const std::string& path, ClassProfile& out);
template <typename ErrorT>
void read_into(const Json& j, const std::string& path, SyntheticConfig& out);

template <typename ErrorT>
DenseMatrix matrix_from_json(const Json& j, const std::string& path);

}  // namespace fauxgraph::detail
