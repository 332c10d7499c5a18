#include "fauxgraph/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fauxgraph/error.hpp"
#include "default_lexicons.inc"

namespace fauxgraph {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }
char to_lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

bool starts_with_url_scheme(std::string_view s) {
  auto prefix = [&](std::string_view p) {
    if (s.size() < p.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (to_lower(s[i]) != p[i]) return false;
    }
    return true;
  };
  return prefix("http://") || prefix("https://");
}

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

template <typename Fn>
void for_each_line(std::string_view contents, Fn&& fn) {
  std::size_t line_no = 0;
  while (!contents.empty()) {
    auto nl = contents.find('\n');
    auto line = contents.substr(0, nl);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, line_no);
    if (nl == std::string_view::npos) break;
    contents.remove_prefix(nl + 1);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open lexicon file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TokenizedText tokenize(std::string_view text) {
  TokenizedText out;
  for (char c : text) {
    if (c == '?') ++out.question_marks;
    if (c == '!') ++out.exclamation_marks;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && is_space(text[pos])) ++pos;
    std::size_t end = pos;
    while (end < text.size() && !is_space(text[end])) ++end;
    if (end == pos) break;
    std::string_view raw = text.substr(pos, end - pos);
    pos = end;

    while (!raw.empty() && is_punct(raw.front())) raw.remove_prefix(1);
    if (raw.empty()) continue;
    if (starts_with_url_scheme(raw)) {
      out.tokens.push_back({std::string(raw), true});
      continue;
    }
    while (!raw.empty() && is_punct(raw.back())) raw.remove_suffix(1);
    if (raw.empty()) continue;
    std::string word(raw);
    std::transform(word.begin(), word.end(), word.begin(), to_lower);
    out.tokens.push_back({std::move(word), false});
  }
  return out;
}

std::unordered_set<std::string> parse_term_list(std::string_view contents) {
  std::unordered_set<std::string> terms;
  for_each_line(contents, [&](std::string_view line, std::size_t) {
    line = trim_view(line);
    if (line.empty() || line.front() == '#') return;
    std::string term(line);
    std::transform(term.begin(), term.end(), term.begin(), to_lower);
    terms.insert(std::move(term));
  });
  return terms;
}

std::unordered_map<std::string, double> parse_polarity_list(std::string_view contents) {
  std::unordered_map<std::string, double> lexicon;
  for_each_line(contents, [&](std::string_view line, std::size_t line_no) {
    if (trim_view(line).empty() || trim_view(line).front() == '#') return;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw DataError("sentiment lexicon line " + std::to_string(line_no) + ": expected token<TAB>polarity");
    }
    std::string token(trim_view(line.substr(0, tab)));
    auto number = trim_view(line.substr(tab + 1));
    double polarity = 0.0;
    auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), polarity);
    if (ec != std::errc{} || ptr != number.data() + number.size() || token.empty()) {
      throw DataError("sentiment lexicon line " + std::to_string(line_no) + ": malformed entry");
    }
    if (polarity < -1.0 || polarity > 1.0) {
      throw DataError("sentiment lexicon line " + std::to_string(line_no) + ": polarity outside [-1, 1]");
    }
    std::transform(token.begin(), token.end(), token.begin(), to_lower);
    lexicon[token] = polarity;
  });
  return lexicon;
}

const Lexicons& Lexicons::defaults() {
  static const Lexicons lexicons{
      parse_term_list(detail::kDefaultVerityTerms),
      parse_term_list(detail::kDefaultImageTerms),
      parse_polarity_list(detail::kDefaultSentiment),
  };
  return lexicons;
}

Lexicons Lexicons::load(const std::filesystem::path& dir) {
  Lexicons lex{
      parse_term_list(read_file(dir / "verity_terms.txt")),
      parse_term_list(read_file(dir / "image_terms.txt")),
      parse_polarity_list(read_file(dir / "sentiment.tsv")),
  };
  if (lex.verity_terms.empty() || lex.image_terms.empty() || lex.sentiment.empty()) {
    throw DataError("lexicon directory " + dir.string() + " contains an empty lexicon");
  }
  return lex;
}

}  // namespace fauxgraph
