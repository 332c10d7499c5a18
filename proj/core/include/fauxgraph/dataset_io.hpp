#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fauxgraph/records.hpp"

namespace fauxgraph {

struct ParseIssue {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct ParseResult {
  std::vector<PostRecord> posts;
  std::vector<ParseIssue> errors;
  /// Object keys that are not part of the schema; they are ignored.
  std::size_t unknown_fields = 0;
};

/// Parses one JSON object. Throws DataError describing the first violation.
PostRecord parse_post(std::string_view json_text, std::size_t* unknown_fields = nullptr);

/// JSON-lines reader. Malformed lines are reported and skipped; blank lines
/// are ignored. Throws DataError when no line is valid.
ParseResult parse_posts(std::istream& in);
/// Also throws DataError when the file cannot be opened.
ParseResult parse_posts(const std::filesystem::path& path);

std::string post_to_json(const PostRecord& post);
void write_posts(std::ostream& out, std::span<const PostRecord> posts);
void write_posts(const std::filesystem::path& path, std::span<const PostRecord> posts);

}  // namespace fauxgraph
