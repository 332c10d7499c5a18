#include "fauxgraph/node_features.hpp"

#include <algorithm>
#include <cmath>

#include "fauxgraph/error.hpp"

namespace fauxgraph {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t hash_token(std::string_view token, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ splitmix64(seed);
  for (unsigned char c : token) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(h);
}

std::vector<double> linguistic_vector(std::string_view text, std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw DataError("linguistic dimension must be at least 1");
  std::vector<double> v(dim, 0.0);
  for (const auto& token : tokenize(text).tokens) {
    if (token.is_url) continue;
    const std::uint64_t h = hash_token(token.text, seed);
    const double sign = (splitmix64(h) >> 63) != 0 ? -1.0 : 1.0;
    v[h % dim] += sign;
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

double sentiment_score(std::string_view text, const Lexicons& lexicons) {
  double total = 0.0;
  std::size_t hits = 0;
  for (const auto& token : tokenize(text).tokens) {
    if (token.is_url) continue;
    if (auto it = lexicons.sentiment.find(token.text); it != lexicons.sentiment.end()) {
      total += it->second;
      ++hits;
    }
  }
  if (hits == 0) return 0.0;
  return std::clamp(total / static_cast<double>(hits), -1.0, 1.0);
}

std::int64_t raw_endorsement(const CommentRecord& comment, Platform platform) {
  switch (platform) {
    case Platform::kReddit:
      return comment.likes - comment.dislikes.value_or(0);
    case Platform::kTwitter:
      return comment.likes + comment.retweets.value_or(0);
  }
  return comment.likes;
}

double endorsement_value(const CommentRecord& comment, Platform platform, bool log_scale) {
  const auto raw = static_cast<double>(raw_endorsement(comment, platform));
  if (!log_scale) return raw;
  if (raw == 0.0) return 0.0;
  return std::copysign(std::log1p(std::abs(raw)), raw);
}

std::array<double, kMetadataDim> metadata_features(std::string_view text, const Lexicons& lexicons) {
  const auto tokenized = tokenize(text);
  std::array<double, kMetadataDim> m{};
  m[0] = static_cast<double>(tokenized.tokens.size());
  for (const auto& token : tokenized.tokens) {
    if (token.is_url) {
      m[5] += 1.0;
      continue;
    }
    if (lexicons.verity_terms.contains(token.text)) m[1] += 1.0;
    if (lexicons.image_terms.contains(token.text)) m[2] += 1.0;
  }
  m[3] = static_cast<double>(tokenized.question_marks);
  m[4] = static_cast<double>(tokenized.exclamation_marks);
  return m;
}

DenseMatrix assemble_feature_matrix(const CommentGraph& graph, const PostRecord& post,
                                    const Lexicons& lexicons, const FeatureConfig& config) {
  if (graph.node_count() != post.comments.size() + 1) {
    throw DimensionError("graph has " + std::to_string(graph.node_count()) + " nodes but post '" +
                         post.post_id + "' has " + std::to_string(post.comments.size()) + " comments");
  }
  const FeatureLayout layout{config.linguistic_dim};
  DenseMatrix f(graph.node_count(), layout.width());
  f(kSourceNode, layout.source_flag_col()) = 1.0;
  for (std::size_t i = 0; i < post.comments.size(); ++i) {
    const auto& comment = post.comments[i];
    if (graph.node_ids[i + 1] != comment.comment_id) {
      throw DimensionError("graph node " + std::to_string(i + 1) + " does not match comment '" +
                           comment.comment_id + "'");
    }
    auto row = f.row(i + 1);
    const auto lv = linguistic_vector(comment.text, config.linguistic_dim, config.hash_seed);
    std::copy(lv.begin(), lv.end(), row.begin());
    row[layout.sentiment_col()] = sentiment_score(comment.text, lexicons);
    row[layout.endorsement_col()] = endorsement_value(comment, post.platform, config.log_endorsement);
    const auto meta = metadata_features(comment.text, lexicons);
    std::copy(meta.begin(), meta.end(), row.begin() + static_cast<std::ptrdiff_t>(layout.metadata_col()));
  }
  return f;
}

}  // namespace fauxgraph
