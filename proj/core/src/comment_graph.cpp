#include "fauxgraph/comment_graph.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "fauxgraph/error.hpp"

namespace fauxgraph {

CommentGraph build_graph(const PostRecord& post) {
  CommentGraph graph;
  graph.post_id = post.post_id;
  graph.node_ids.reserve(post.comments.size() + 1);
  graph.node_ids.emplace_back();

  std::unordered_map<std::string_view, std::size_t> index;
  index.reserve(post.comments.size());
  for (std::size_t i = 0; i < post.comments.size(); ++i) {
    const auto& id = post.comments[i].comment_id;
    if (!index.emplace(id, i + 1).second) {
      throw DataError("post '" + post.post_id + "': duplicate comment_id '" + id + "'");
    }
    graph.node_ids.push_back(id);
  }

  graph.edges.reserve(post.comments.size());
  for (std::size_t i = 0; i < post.comments.size(); ++i) {
    const std::size_t node = i + 1;
    std::size_t parent = kSourceNode;
    if (const auto& pid = post.comments[i].parent_id) {
      auto it = index.find(*pid);
      // A comment naming itself as parent is treated like a dangling link.
      if (it != index.end() && it->second != node) {
        parent = it->second;
      } else {
        ++graph.reattached;
      }
    }
    graph.edges.emplace_back(parent, node);
  }

  // Reply cycles (possible only with malformed parent links) would leave
  // nodes unreachable from the source; cut each cycle at its first node.
  if (!is_connected_to_source(graph)) {
    std::vector<std::size_t> parent_of(graph.node_count(), kSourceNode);
    for (const auto& [p, c] : graph.edges) parent_of[c] = p;
    std::vector<int> state(graph.node_count(), 0);  // 0 unknown, 1 reaches source
    state[kSourceNode] = 1;
    for (std::size_t v = 1; v < graph.node_count(); ++v) {
      std::vector<std::size_t> path;
      std::unordered_set<std::size_t> on_path;
      std::size_t cur = v;
      while (state[cur] == 0 && !on_path.contains(cur)) {
        on_path.insert(cur);
        path.push_back(cur);
        cur = parent_of[cur];
      }
      if (state[cur] == 0) {
        parent_of[cur] = kSourceNode;
        ++graph.reattached;
      }
      for (auto n : path) state[n] = 1;
    }
    for (auto& [p, c] : graph.edges) p = parent_of[c];
  }
  return graph;
}

SparseAdjacency adjacency(const CommentGraph& graph, bool symmetrize) {
  std::vector<SparseEntry> entries;
  entries.reserve(graph.edges.size() * (symmetrize ? 2 : 1));
  for (const auto& [i, j] : graph.edges) {
    if (i == j) continue;
    entries.push_back({i, j, 1.0});
    if (symmetrize) entries.push_back({j, i, 1.0});
  }
  auto a = SparseAdjacency::canonical(graph.node_count(), std::move(entries));
  // Binary: repeated replies between the same pair still count once.
  for (auto& e : a.entries) e.value = 1.0;
  return a;
}

PostRecord clamp_timestamps(const PostRecord& post) {
  PostRecord out = post;
  for (auto& c : out.comments) c.created_at = std::max(c.created_at, post.created_at);
  return out;
}

PostRecord filter_by_window(const PostRecord& post, std::int64_t window_seconds) {
  if (window_seconds < 0) throw DataError("time window must be non-negative");
  PostRecord out = post;
  out.comments.clear();
  const std::int64_t limit = post.created_at + window_seconds;
  std::unordered_set<std::string_view> all_ids;
  std::unordered_set<std::string_view> kept_ids;
  for (const auto& c : post.comments) {
    all_ids.insert(c.comment_id);
    if (std::max(c.created_at, post.created_at) <= limit) kept_ids.insert(c.comment_id);
  }
  for (const auto& c : post.comments) {
    if (!kept_ids.contains(c.comment_id)) continue;
    CommentRecord kept = c;
    if (kept.parent_id && all_ids.contains(*kept.parent_id) && !kept_ids.contains(*kept.parent_id)) {
      kept.parent_id.reset();
    }
    out.comments.push_back(std::move(kept));
  }
  return out;
}

bool is_connected_to_source(const CommentGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::vector<std::size_t>> children(n);
  for (const auto& [p, c] : graph.edges) children[p].push_back(c);
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> frontier;
  frontier.push(kSourceNode);
  seen[kSourceNode] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    auto v = frontier.front();
    frontier.pop();
    for (auto c : children[v]) {
      if (!seen[c]) {
        seen[c] = true;
        ++reached;
        frontier.push(c);
      }
    }
  }
  return reached == n;
}

}  // namespace fauxgraph
