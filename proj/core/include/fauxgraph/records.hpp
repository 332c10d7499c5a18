#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fauxgraph {

enum class Platform { kReddit, kTwitter };

std::string_view to_string(Platform platform);
/// Accepts "reddit"/"twitter" in any letter case.
std::optional<Platform> parse_platform(std::string_view name);

struct CommentRecord {
  std::string comment_id;
  /// Absent for direct replies to the post.
  std::optional<std::string> parent_id;
  std::string author_id;
  std::string text;
  std::int64_t likes = 0;
  std::optional<std::int64_t> dislikes;
  std::optional<std::int64_t> retweets;
  /// Seconds since epoch.
  std::int64_t created_at = 0;

  friend bool operator==(const CommentRecord&, const CommentRecord&) = default;
};

/// A social-media post reduced to what the detector consumes: its comment
/// thread and (for training data) the ground-truth label. The post's own
/// image and text are never stored.
struct PostRecord {
  std::string post_id;
  Platform platform = Platform::kReddit;
  std::int64_t created_at = 0;
  /// true = fauxtography.
  std::optional<bool> label;
  std::vector<CommentRecord> comments;

  friend bool operator==(const PostRecord&, const PostRecord&) = default;
};

}  // namespace fauxgraph
