#include <gtest/gtest.h>

#include <random>

#include "fauxgraph/comment_graph.hpp"
#include "fauxgraph/error.hpp"
#include "test_support.hpp"

namespace fauxgraph {
namespace {

CommentRecord comment(std::string id, std::optional<std::string> parent = std::nullopt, std::int64_t at = 0) {
  CommentRecord c;
  c.comment_id = std::move(id);
  c.parent_id = std::move(parent);
  c.author_id = "a";
  c.created_at = at;
  return c;
}

PostRecord post_with(std::vector<CommentRecord> comments, std::int64_t at = 0) {
  PostRecord p;
  p.post_id = "p";
  p.created_at = at;
  p.comments = std::move(comments);
  return p;
}

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

TEST(BuildGraph, ReplyChain) {
  const auto g = build_graph(post_with({comment("c1"), comment("c2", "c1")}));
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edges, (Edges{{0, 1}, {1, 2}}));
  EXPECT_EQ(g.node_ids[1], "c1");
  EXPECT_EQ(g.node_ids[2], "c2");
}

TEST(BuildGraph, EmptyPostIsSourceOnly) {
  const auto g = build_graph(post_with({}));
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_TRUE(g.edges.empty());
}

TEST(BuildGraph, TopLevelCommentsFormStar) {
  const auto g = build_graph(post_with({comment("a"), comment("b"), comment("c")}));
  EXPECT_EQ(g.edges, (Edges{{0, 1}, {0, 2}, {0, 3}}));
}

TEST(BuildGraph, DuplicateIdRejectedWithIdentifier) {
  try {
    build_graph(post_with({comment("x"), comment("x")}));
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("'x'"), std::string::npos);
  }
}

TEST(BuildGraph, DanglingParentReattachedToSource) {
  const auto g = build_graph(post_with({comment("a"), comment("b", "deleted")}));
  EXPECT_EQ(g.edges, (Edges{{0, 1}, {0, 2}}));
  EXPECT_EQ(g.reattached, 1u);
}

TEST(BuildGraph, ParentMayAppearLaterInInput) {
  const auto g = build_graph(post_with({comment("b", "a"), comment("a")}));
  EXPECT_EQ(g.edges, (Edges{{2, 1}, {0, 2}}));
  EXPECT_TRUE(is_connected_to_source(g));
}

TEST(BuildGraph, CyclesAndSelfParentsAreCut) {
  const auto g = build_graph(post_with({comment("a", "b"), comment("b", "a"), comment("c", "c")}));
  EXPECT_TRUE(is_connected_to_source(g));
  EXPECT_EQ(g.edges.size(), 3u);
  for (const auto& [p, c] : g.edges) EXPECT_NE(p, c);
}

TEST(Adjacency, DirectedSingleEdge) {
  CommentGraph g;
  g.node_ids = {"", "c"};
  g.edges = {{0, 1}};
  EXPECT_EQ(adjacency(g, false).entries, (std::vector<SparseEntry>{{0, 1, 1.0}}));
  EXPECT_EQ(adjacency(g, true).entries, (std::vector<SparseEntry>{{0, 1, 1.0}, {1, 0, 1.0}}));
}

TEST(Adjacency, SingleNodeHasNoEntries) {
  CommentGraph g;
  g.node_ids = {""};
  const auto a = adjacency(g, true);
  EXPECT_EQ(a.dim, 1u);
  EXPECT_TRUE(a.entries.empty());
}

TEST(Adjacency, RepeatedEdgesStayBinary) {
  CommentGraph g;
  g.node_ids = {"", "c"};
  g.edges = {{0, 1}, {0, 1}};
  EXPECT_EQ(adjacency(g, false).entries, (std::vector<SparseEntry>{{0, 1, 1.0}}));
}

TEST(FilterByWindow, BoundaryFilter) {
  const auto p = post_with({comment("a", std::nullopt, 30 * 60), comment("b", std::nullopt, 2 * 3600)});
  const auto f = filter_by_window(p, 3600);
  ASSERT_EQ(f.comments.size(), 1u);
  EXPECT_EQ(f.comments[0].comment_id, "a");
}

TEST(FilterByWindow, ZeroWindowKeepsOnlySimultaneousComments) {
  const auto p = post_with({comment("a", std::nullopt, 100), comment("b", std::nullopt, 101)}, 100);
  const auto f = filter_by_window(p, 0);
  ASSERT_EQ(f.comments.size(), 1u);
  EXPECT_EQ(f.comments[0].comment_id, "a");
}

TEST(FilterByWindow, OrphanReattachedAfterParentDropped) {
  // c3 carries a skewed clock: it replies to c2 but is timestamped earlier.
  const auto p = post_with({comment("c1", std::nullopt, 10 * 60), comment("c2", "c1", 90 * 60),
                            comment("c3", "c2", 20 * 60)});
  const auto f = filter_by_window(p, 3600);
  ASSERT_EQ(f.comments.size(), 2u);
  EXPECT_EQ(f.comments[0].comment_id, "c1");
  EXPECT_EQ(f.comments[1].comment_id, "c3");
  EXPECT_FALSE(f.comments[1].parent_id.has_value());
}

TEST(FilterByWindow, EarlyTimestampsAreClamped) {
  const auto p = post_with({comment("a", std::nullopt, 50)}, 100);
  EXPECT_EQ(filter_by_window(p, 0).comments.size(), 1u);
  EXPECT_EQ(clamp_timestamps(p).comments[0].created_at, 100);
}

TEST(FilterByWindow, NegativeWindowRejected) { EXPECT_THROW(filter_by_window(post_with({}), -1), DataError); }

// Random reply threads for the property checks below.
PostRecord random_post(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_dist(0, 30);
  std::uniform_int_distribution<std::int64_t> t_dist(-100, 5 * 24 * 3600);
  std::bernoulli_distribution top(0.4), dangling(0.05);
  PostRecord p = post_with({}, 1000);
  const int n = n_dist(rng);
  for (int i = 0; i < n; ++i) {
    std::optional<std::string> parent;
    if (dangling(rng)) {
      parent = "gone";
    } else if (i > 0 && !top(rng)) {
      std::uniform_int_distribution<int> pick(0, i - 1);
      parent = "c" + std::to_string(pick(rng));
    }
    p.comments.push_back(comment("c" + std::to_string(i), parent, 1000 + t_dist(rng)));
  }
  return p;
}

TEST(CommentGraphProperties, EdgeCountConnectivityAndSymmetry) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto post = random_post(rng);
    const auto g = build_graph(post);
    EXPECT_EQ(g.edges.size(), post.comments.size());
    EXPECT_TRUE(is_connected_to_source(g));
    const auto directed = adjacency(g, false);
    const auto sym = adjacency(g, true);
    EXPECT_TRUE(directed.is_canonical());
    EXPECT_TRUE(sym.is_symmetric());
    std::vector<SparseEntry> closure = directed.entries;
    for (const auto& e : directed.entries) closure.push_back({e.col, e.row, 1.0});
    auto expected = SparseAdjacency::canonical(directed.dim, closure);
    for (auto& e : expected.entries) e.value = 1.0;
    EXPECT_EQ(sym, expected);
  }
}

TEST(CommentGraphProperties, WindowIdentityAndMonotonicity) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto post = random_post(rng);
    std::int64_t max_offset = 0;
    for (const auto& c : post.comments) max_offset = std::max(max_offset, c.created_at - post.created_at);
    const auto full = filter_by_window(post, max_offset);
    EXPECT_EQ(full.comments, post.comments);

    std::size_t previous = 0;
    for (std::int64_t w : {0L, 60L, 3600L, 6 * 3600L, 86400L, 5 * 86400L}) {
      const auto f = filter_by_window(post, w);
      EXPECT_GE(f.comments.size(), previous);
      previous = f.comments.size();
      EXPECT_TRUE(is_connected_to_source(build_graph(f)));
    }
  }
}

}  // namespace
}  // namespace fauxgraph
