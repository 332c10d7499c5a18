#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "fauxgraph/comment_graph.hpp"
#include "fauxgraph/dense_matrix.hpp"
#include "fauxgraph/records.hpp"
#include "fauxgraph/text.hpp"

namespace fauxgraph {

inline constexpr std::size_t kMetadataDim = 6;

struct FeatureConfig {
  /// Width of the hashed bag-of-words block.
  std::size_t linguistic_dim = 64;
  /// Endorsement is sign(x) * ln(1 + |x|) when true, raw count otherwise.
  bool log_endorsement = true;
  std::uint64_t hash_seed = 0x5eed'f00d'cafe'd00dULL;

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

/// Column layout of a node feature row:
/// [linguistic (K_L) | sentiment | endorsement | metadata (6) | source flag]
struct FeatureLayout {
  std::size_t linguistic_dim;

  [[nodiscard]] constexpr std::size_t sentiment_col() const { return linguistic_dim; }
  [[nodiscard]] constexpr std::size_t endorsement_col() const { return linguistic_dim + 1; }
  [[nodiscard]] constexpr std::size_t metadata_col() const { return linguistic_dim + 2; }
  [[nodiscard]] constexpr std::size_t source_flag_col() const {
    return linguistic_dim + 2 + kMetadataDim;
  }
  [[nodiscard]] constexpr std::size_t width() const { return source_flag_col() + 1; }
};

/// Seeded 64-bit string hash (FNV-1a followed by a splitmix finalizer).
std::uint64_t hash_token(std::string_view token, std::uint64_t seed);

/// Signed feature hashing of the non-URL tokens, L2-normalized unless zero.
std::vector<double> linguistic_vector(std::string_view text, std::size_t dim,
                                      std::uint64_t seed = FeatureConfig{}.hash_seed);

/// Mean polarity of lexicon tokens, 0 when none match. Always in [-1, 1].
double sentiment_score(std::string_view text, const Lexicons& lexicons);

/// Raw aggregated endorsement: likes - dislikes (Reddit) or
/// likes + retweets (Twitter); missing counts are 0.
std::int64_t raw_endorsement(const CommentRecord& comment, Platform platform);
double endorsement_value(const CommentRecord& comment, Platform platform, bool log_scale = true);

/// [word_count, verity_terms, image_terms, question_marks, exclamation_marks, urls]
std::array<double, kMetadataDim> metadata_features(std::string_view text, const Lexicons& lexicons);

/// Row 0 is zero except its source flag; row v >= 1 describes comment v.
DenseMatrix assemble_feature_matrix(const CommentGraph& graph, const PostRecord& post,
                                    const Lexicons& lexicons, const FeatureConfig& config = {});

}  // namespace fauxgraph
