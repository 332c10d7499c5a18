#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fauxgraph/records.hpp"

namespace fauxgraph {

/// Statistical profile of one class of generated posts.
struct ClassProfile {
  std::size_t min_comments = 12;
  std::size_t max_comments = 48;
  /// Probability that a comment replies to the post rather than to a comment.
  double direct_reply_prob = 0.5;
  /// Probability that a nested reply targets the most recent comment
  /// (deep chains) instead of a uniformly chosen earlier one.
  double chain_prob = 0.5;
  /// Fraction of comments that become heavily endorsed hubs.
  double hub_prob = 0.05;
  /// Mean endorsement of ordinary and hub comments.
  double base_likes = 5.0;
  double hub_likes = 400.0;
  /// Per-word probabilities of drawing from each token pool.
  double verity_rate = 0.05;
  double image_rate = 0.05;
  double negative_rate = 0.1;
  double positive_rate = 0.1;
  /// Per-comment probabilities of a URL, '?' or '!'.
  double url_prob = 0.05;
  double question_prob = 0.1;
  double exclamation_prob = 0.1;
  /// Mean delay between post and comment, seconds.
  double mean_delay_seconds = 6.0 * 3600.0;

  friend bool operator==(const ClassProfile&, const ClassProfile&) = default;
};

ClassProfile default_fauxtography_profile();
ClassProfile default_genuine_profile();

struct SyntheticConfig {
  std::size_t n_posts = 500;
  /// Probability that a post is fauxtography.
  double class_balance = 0.5;
  std::uint64_t seed = 2024;
  ClassProfile fauxtography = default_fauxtography_profile();
  ClassProfile genuine = default_genuine_profile();

  /// Throws DataError on probabilities outside [0, 1] or n_posts < 2.
  void validate() const;
  friend bool operator==(const SyntheticConfig&, const SyntheticConfig&) = default;
};

/// Seeded, deterministic labeled corpus.
std::vector<PostRecord> generate_synthetic(const SyntheticConfig& config);

/// Fraction of a post's comments that reply directly to it (0 for none).
double direct_reply_fraction(const PostRecord& post);

}  // namespace fauxgraph
