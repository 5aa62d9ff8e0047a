#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "convgraph/error.hpp"
#include "convgraph/graphs.hpp"
#include "generators.hpp"

namespace convgraph {
namespace {

using testkit::make_test_thread;

TEST(ReplyGraph, StarAndChain) {
  ThreadRecord star = make_test_thread("s", {{"r", "", "a", 0}, {"x", "r", "b", 1}, {"y", "r", "c", 2}});
  ReplyGraph rs = build_reply_graph(star);
  EXPECT_EQ(rs.node_count(), 3u);
  EXPECT_EQ(rs.edge_count(), 2u);
  EXPECT_EQ(rs.reply_count(rs.root()), 2u);
  EXPECT_FALSE(rs.parent(rs.root()).has_value());

  ThreadRecord chain = make_test_thread("c", {{"r", "", "a", 0}, {"x", "r", "b", 1}, {"y", "x", "c", 2}});
  ReplyGraph rc = build_reply_graph(chain);
  EXPECT_EQ(rc.parent(2), std::optional<NodeId>(1));
  EXPECT_EQ(rc.reply_count(0), 1u);
  EXPECT_EQ(rc.reply_count(1), 1u);
  EXPECT_EQ(rc.reply_count(2), 0u);
}

TEST(ReplyGraph, ExampleThread) {
  ReplyGraph r = build_reply_graph(testkit::example_thread());
  EXPECT_EQ(r.node_count(), 8u);
  EXPECT_EQ(r.edge_count(), 7u);
  EXPECT_EQ(r.reply_count(r.root()), 4u);
  EXPECT_EQ(r.post_id(r.root()), "1");
}

TEST(UserGraph, ReplyDirectionAndEarliestTime) {
  ThreadRecord t = make_test_thread("t", {{"r", "", "A", 0},
                                          {"x", "r", "B", 5},
                                          {"y", "r", "B", 9},
                                          {"z", "x", "B", 12}});  // self-reply: no edge
  UserGraph g = build_user_graph(t);
  ASSERT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.anchor(), 0u);
  EXPECT_EQ(g.name(0), "A");
  const NodeId b = *g.find("B");
  EXPECT_TRUE(g.has_edge(b, 0));
  EXPECT_FALSE(g.has_edge(0, b));
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edge_time(b, 0), std::optional<Timestamp>(5));
}

TEST(UserGraph, ExampleThread) {
  UserGraph g = build_user_graph(testkit::example_thread());
  EXPECT_EQ(g.node_count(), 5u);
  EXPECT_EQ(g.edge_count(), 6u);
  EXPECT_EQ(g.name(g.anchor()), "red");
  EXPECT_EQ(g.in_degree(g.anchor()), 4u);
  EXPECT_EQ(g.out_degree(g.anchor()), 2u);
  const NodeId yellow = *g.find("yellow");
  const NodeId purple = *g.find("purple");
  EXPECT_TRUE(g.has_edge(0, yellow));
  EXPECT_TRUE(g.has_edge(0, purple));
  EXPECT_EQ(g.edge_time(0, purple), std::optional<Timestamp>(50));
  EXPECT_EQ(g.edge_time(0, yellow), std::optional<Timestamp>(60));
}

TEST(UserGraph, RejectsSelfLoopsAndBadIndices) {
  const std::vector<UserEdge> loop = {{1, 1, 0}};
  EXPECT_THROW(UserGraph::from_edges(3, 0, loop), InvalidArgument);
  const std::vector<UserEdge> out_of_range = {{0, 3, 0}};
  EXPECT_THROW(UserGraph::from_edges(3, 0, out_of_range), InvalidArgument);
  EXPECT_THROW(UserGraph::from_edges(3, 5, {}), InvalidArgument);
}

TEST(UserGraph, ParallelEdgesKeepEarliest) {
  const std::vector<UserEdge> edges = {{1, 0, 30}, {1, 0, 10}, {1, 0, 20}};
  UserGraph g = UserGraph::from_edges(2, 0, edges);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edge_time(1, 0), std::optional<Timestamp>(10));
}

TEST(Degrees, SingleAuthorThread) {
  ThreadRecord t = make_test_thread("t", {{"r", "", "A", 0}, {"x", "r", "A", 1}});
  DegreeReport d = degree_sequences(build_user_graph(t));
  EXPECT_EQ(d.kind, GraphKind::User);
  EXPECT_EQ(d.in_histogram, (std::map<std::size_t, std::size_t>{{0, 1}}));
  EXPECT_EQ(d.out_histogram, (std::map<std::size_t, std::size_t>{{0, 1}}));
}

TEST(Degrees, ExampleHistograms) {
  DegreeReport user = degree_sequences(build_user_graph(testkit::example_thread()));
  EXPECT_EQ(user.in_histogram, (std::map<std::size_t, std::size_t>{{0, 2}, {1, 2}, {4, 1}}));
  EXPECT_EQ(user.out_histogram, (std::map<std::size_t, std::size_t>{{1, 4}, {2, 1}}));

  DegreeReport reply = degree_sequences(build_reply_graph(testkit::example_thread()));
  EXPECT_EQ(reply.kind, GraphKind::Reply);
  EXPECT_EQ(reply.in_histogram, (std::map<std::size_t, std::size_t>{{0, 4}, {1, 3}, {4, 1}}));
  EXPECT_EQ(reply.out_histogram, (std::map<std::size_t, std::size_t>{{0, 1}, {1, 7}}));
}

TEST(Degrees, SumsMatchEdgeCount) {
  testkit::Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    ThreadRecord t = testkit::random_thread("t", 1 + rng() % 40, 1 + rng() % 10, rng);
    for (const DegreeReport& d : {degree_sequences(build_user_graph(t)), degree_sequences(build_reply_graph(t))}) {
      const auto in_sum = std::accumulate(d.in_degree.begin(), d.in_degree.end(), std::size_t{0});
      const auto out_sum = std::accumulate(d.out_degree.begin(), d.out_degree.end(), std::size_t{0});
      EXPECT_EQ(in_sum, out_sum);
    }
  }
}

// Relabelling posts and shuffling their order must not change which authors
// reply to whom.
TEST(UserGraph, InvariantUnderPostPermutation) {
  testkit::Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    ThreadRecord t = testkit::random_thread("t", 2 + rng() % 30, 2 + rng() % 8, rng);
    std::vector<PostRecord> posts(t.posts().begin(), t.posts().end());
    std::shuffle(posts.begin(), posts.end(), rng);
    ThreadRecord shuffled = make_thread("t", t.source(), posts);

    auto pairs = [](const UserGraph& g) {
      std::set<std::tuple<std::string, std::string, Timestamp>> out;
      for (const UserEdge& e : g.edges()) out.emplace(g.name(e.from), g.name(e.to), e.first_t);
      return out;
    };
    UserGraph a = build_user_graph(t);
    UserGraph b = build_user_graph(shuffled);
    EXPECT_EQ(a.name(a.anchor()), b.name(b.anchor()));
    EXPECT_EQ(pairs(a), pairs(b));
  }
}

// The edge set equals the set of distinct (author(child), author(parent))
// pairs with differing authors.
TEST(UserGraph, EdgesEqualAuthorPairs) {
  testkit::Rng rng(9);
  for (int k = 0; k < 200; ++k) {
    ThreadRecord t = testkit::random_thread("t", 1 + rng() % 40, 1 + rng() % 10, rng);
    std::set<std::pair<std::string, std::string>> expected;
    const auto parent = t.parent_index();
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == t.root_index()) continue;
      const auto& child = t.posts()[i].author;
      const auto& target = t.posts()[parent[i]].author;
      if (child != target) expected.emplace(child, target);
    }
    UserGraph g = build_user_graph(t);
    std::set<std::pair<std::string, std::string>> actual;
    for (const UserEdge& e : g.edges()) actual.emplace(g.name(e.from), g.name(e.to));
    EXPECT_EQ(actual, expected);
    for (NodeId n = 0; n < g.node_count(); ++n) EXPECT_FALSE(g.has_edge(n, n));
  }
}

TEST(UserGraph, NeighbourListsAgreeWithEdges) {
  testkit::Rng rng(13);
  UserGraph g = testkit::random_digraph(25, 0.2, rng);
  std::size_t out_total = 0, in_total = 0;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    for (NodeId m : g.out_neighbors(n)) EXPECT_TRUE(g.has_edge(n, m));
    for (NodeId m : g.in_neighbors(n)) EXPECT_TRUE(g.has_edge(m, n));
    out_total += g.out_degree(n);
    in_total += g.in_degree(n);
  }
  EXPECT_EQ(out_total, g.edge_count());
  EXPECT_EQ(in_total, g.edge_count());
}

}  // namespace
}  // namespace convgraph
