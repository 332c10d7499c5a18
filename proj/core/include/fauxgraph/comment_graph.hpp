#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fauxgraph/records.hpp"
#include "fauxgraph/sparse.hpp"

namespace fauxgraph {

/// Index of the node standing for the post itself.
inline constexpr std::size_t kSourceNode = 0;

/// Directed reply network of one post. Node 0 is the source (the post);
/// nodes 1..V-1 are comments in input order. An edge (i, j) means node j
/// replies to node i.
struct CommentGraph {
  std::string post_id;
  /// node_ids[0] is empty (source); node_ids[v] is the comment id of node v.
  std::vector<std::string> node_ids;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  /// Comments whose parent_id did not resolve and were attached to the source.
  std::size_t reattached = 0;

  [[nodiscard]] std::size_t node_count() const { return node_ids.size(); }
};

/// Builds the reply network. Dangling parent references are reattached to
/// the source; duplicate comment ids throw DataError.
CommentGraph build_graph(const PostRecord& post);

/// Binary adjacency without self loops. With `symmetrize`, every reply edge
/// is entered in both directions.
SparseAdjacency adjacency(const CommentGraph& graph, bool symmetrize = true);

/// Keeps the comments posted at most `window_seconds` after the post.
/// Comments whose parent is dropped are reattached to the post.
PostRecord filter_by_window(const PostRecord& post, std::int64_t window_seconds);

/// Copy of `post` with comment timestamps clamped to the post creation time.
PostRecord clamp_timestamps(const PostRecord& post);

/// Every non-source node reaches the source through reply edges.
bool is_connected_to_source(const CommentGraph& graph);

}  // namespace fauxgraph
