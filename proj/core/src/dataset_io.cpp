#include "fauxgraph/dataset_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "fauxgraph/error.hpp"
#include "json_codec.hpp"

namespace fauxgraph {

namespace {

using detail::Json;
using detail::ObjectReader;
using detail::OrderedJson;

CommentRecord parse_comment(const Json& j, const std::string& path, std::size_t& unknown) {
  ObjectReader<DataError> r(j, path);
  CommentRecord c;
  c.comment_id = r.string("comment_id");
  if (c.comment_id.empty()) throw DataError(r.where("comment_id") + " must not be empty");
  r.optional("parent_id", c.parent_id, [](auto& rd, const std::string& k) { return rd.string(k); });
  c.author_id = r.string("author_id");
  c.text = r.string("text");
  c.likes = r.non_negative("likes");
  r.optional("dislikes", c.dislikes, [](auto& rd, const std::string& k) { return rd.non_negative(k); });
  r.optional("retweets", c.retweets, [](auto& rd, const std::string& k) { return rd.non_negative(k); });
  c.created_at = r.integer("created_at");
  unknown += r.unknown_count();
  return c;
}

std::optional<bool> parse_label(const Json& v, const std::string& where) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) {
    const auto x = v.get<std::int64_t>();
    if (x == 0 || x == 1) return x == 1;
  }
  throw DataError(where + " must be a boolean (or 0/1)");
}

}  // namespace

PostRecord parse_post(std::string_view json_text, std::size_t* unknown_fields) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }
  ObjectReader<DataError> r(j, "post");
  PostRecord post;
  post.post_id = r.string("post_id");
  const auto platform = r.string("platform");
  if (auto p = parse_platform(platform)) {
    post.platform = *p;
  } else {
    throw DataError("post.platform '" + platform + "' is not reddit or twitter");
  }
  post.created_at = r.integer("created_at");
  if (r.has("label")) {
    post.label = parse_label(r.raw("label"), r.where("label"));
  } else {
    r.mark_seen("label");
  }
  const auto& comments = r.raw("comments");
  if (!comments.is_array()) throw DataError("post.comments must be an array");
  std::size_t unknown = r.unknown_count();
  post.comments.reserve(comments.size());
  for (std::size_t i = 0; i < comments.size(); ++i) {
    post.comments.push_back(parse_comment(comments[i], "post.comments[" + std::to_string(i) + "]", unknown));
  }
  if (unknown_fields != nullptr) *unknown_fields += unknown;
  return post;
}

ParseResult parse_posts(std::istream& in) {
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      result.posts.push_back(parse_post(line, &result.unknown_fields));
    } catch (const DataError& e) {
      result.errors.push_back({line_no, e.what()});
    }
  }
  if (result.posts.empty()) {
    std::string msg = "dataset contains no valid post records";
    if (!result.errors.empty()) {
      msg += " (line " + std::to_string(result.errors.front().line) + ": " + result.errors.front().message + ")";
    }
    throw DataError(msg);
  }
  return result;
}

ParseResult parse_posts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file " + path.string());
  return parse_posts(in);
}

std::string post_to_json(const PostRecord& post) {
  OrderedJson j;
  j["post_id"] = post.post_id;
  j["platform"] = std::string(to_string(post.platform));
  j["created_at"] = post.created_at;
  if (post.label) j["label"] = *post.label;
  OrderedJson comments = OrderedJson::array();
  for (const auto& c : post.comments) {
    OrderedJson cj;
    cj["comment_id"] = c.comment_id;
    if (c.parent_id) cj["parent_id"] = *c.parent_id;
    cj["author_id"] = c.author_id;
    cj["text"] = c.text;
    cj["likes"] = c.likes;
    if (c.dislikes) cj["dislikes"] = *c.dislikes;
    if (c.retweets) cj["retweets"] = *c.retweets;
    cj["created_at"] = c.created_at;
    comments.push_back(std::move(cj));
  }
  j["comments"] = std::move(comments);
  return j.dump();
}

void write_posts(std::ostream& out, std::span<const PostRecord> posts) {
  for (const auto& p : posts) out << post_to_json(p) << '\n';
}

void write_posts(const std::filesystem::path& path, std::span<const PostRecord> posts) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write dataset file " + path.string());
  write_posts(out, posts);
  if (!out) throw DataError("failed while writing " + path.string());
}

}  // namespace fauxgraph
