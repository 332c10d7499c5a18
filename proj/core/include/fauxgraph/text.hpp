#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace fauxgraph {

struct Token {
  std::string text;
  bool is_url = false;

  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenizedText {
  std::vector<Token> tokens;
  std::size_t question_marks = 0;
  std::size_t exclamation_marks = 0;
};

/// Whitespace tokenizer. Non-URL tokens are ASCII-lowercased with leading
/// and trailing punctuation stripped; tokens that start with http:// or
/// https:// are kept verbatim as URL tokens. '?' and '!' are counted over
/// the raw string.
TokenizedText tokenize(std::string_view text);

/// Term lists used by the sentiment and metadata attributes.
struct Lexicons {
  std::unordered_set<std::string> verity_terms;
  std::unordered_set<std::string> image_terms;
  /// token -> polarity in [-1, 1]
  std::unordered_map<std::string, double> sentiment;

  /// The lexicons compiled into the library (identical to the files shipped
  /// under data/lexicons).
  static const Lexicons& defaults();

  /// Loads verity_terms.txt, image_terms.txt and sentiment.tsv from `dir`.
  /// Throws DataError when a file is missing, empty, or malformed.
  static Lexicons load(const std::filesystem::path& dir);
};

std::unordered_set<std::string> parse_term_list(std::string_view contents);
std::unordered_map<std::string, double> parse_polarity_list(std::string_view contents);

}  // namespace fauxgraph
