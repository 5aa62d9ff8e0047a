#pragma once

// Reply trees and user interaction graphs built from a single thread.
//
// Both graphs orient edges from the reply toward the post (or author) being
// replied to, so in-degree counts replies received.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convgraph/thread_model.hpp"

namespace convgraph {

using NodeId = std::uint32_t;

class ReplyGraph {
 public:
  std::size_t node_count() const noexcept { return post_ids_.size(); }
  std::size_t edge_count() const noexcept { return node_count() == 0 ? 0 : node_count() - 1; }
  NodeId root() const noexcept { return root_; }

  const std::string& post_id(NodeId n) const { return post_ids_[n]; }
  Timestamp time(NodeId n) const { return times_[n]; }

  /// Post this node replies to; empty for the root.
  std::optional<NodeId> parent(NodeId n) const {
    if (n == root_) return std::nullopt;
    return parents_[n];
  }

  /// Number of direct replies received by `n`.
  std::size_t reply_count(NodeId n) const { return reply_counts_[n]; }

  friend ReplyGraph build_reply_graph(const ThreadRecord& thread);

 private:
  std::vector<std::string> post_ids_;
  std::vector<Timestamp> times_;
  std::vector<NodeId> parents_;
  std::vector<std::size_t> reply_counts_;
  NodeId root_ = 0;
};

ReplyGraph build_reply_graph(const ThreadRecord& thread);

struct UserEdge {
  NodeId from = 0;
  NodeId to = 0;
  Timestamp first_t = 0;  // earliest reply establishing from -> to

  bool operator==(const UserEdge&) const = default;
};

/// Simple directed graph of thread participants with a distinguished anchor
/// (the author of the root post). No self-loops, no parallel edges.
class UserGraph {
 public:
  UserGraph() = default;

  /// Builds a graph over `names.size()` nodes. Parallel edges collapse to
  /// the earliest first_t. Throws InvalidArgument on self-loops, bad node
  /// indices, or an anchor out of range.
  UserGraph(std::vector<std::string> names, NodeId anchor, std::span<const UserEdge> edges);

  /// Unnamed nodes "0", "1", ... for tests and synthetic graphs.
  static UserGraph from_edges(std::size_t n, NodeId anchor, std::span<const UserEdge> edges);

  std::size_t node_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  NodeId anchor() const noexcept { return anchor_; }
  const std::string& name(NodeId n) const { return names_[n]; }
  std::optional<NodeId> find(const std::string& name) const;

  /// Sorted by (from, to).
  std::span<const UserEdge> edges() const noexcept { return edges_; }

  std::span<const NodeId> out_neighbors(NodeId n) const;
  std::span<const NodeId> in_neighbors(NodeId n) const;
  std::size_t out_degree(NodeId n) const { return out_neighbors(n).size(); }
  std::size_t in_degree(NodeId n) const { return in_neighbors(n).size(); }

  bool has_edge(NodeId from, NodeId to) const;
  std::optional<Timestamp> edge_time(NodeId from, NodeId to) const;

 private:
  std::vector<std::string> names_;
  NodeId anchor_ = 0;
  std::vector<UserEdge> edges_;
  // CSR over edges_: out-neighbours of n are out_targets_[out_offsets_[n] .. out_offsets_[n+1]).
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> in_sources_;
};

/// One node per distinct author; an edge u -> v whenever u replies to a post
/// by v (u != v), stamped with the earliest such reply. Nodes are numbered in
/// order of first appearance, root author first, so the anchor is node 0.
UserGraph build_user_graph(const ThreadRecord& thread);

enum class GraphKind { User, Reply };

std::string_view to_string(GraphKind k);

struct DegreeReport {
  GraphKind kind = GraphKind::User;
  std::vector<std::size_t> in_degree;
  std::vector<std::size_t> out_degree;
  std::map<std::size_t, std::size_t> in_histogram;  // degree -> node count
  std::map<std::size_t, std::size_t> out_histogram;
};

DegreeReport degree_sequences(const ReplyGraph& g);
DegreeReport degree_sequences(const UserGraph& g);

}  // namespace convgraph
