#include "convgraph/graphs.hpp"

#include <algorithm>
#include <unordered_map>

namespace convgraph {

ReplyGraph build_reply_graph(const ThreadRecord& thread) {
  ReplyGraph g;
  const auto posts = thread.posts();
  const auto parent = thread.parent_index();
  g.post_ids_.reserve(posts.size());
  g.times_.reserve(posts.size());
  g.parents_.resize(posts.size());
  g.reply_counts_.assign(posts.size(), 0);
  g.root_ = static_cast<NodeId>(thread.root_index());

  for (std::size_t i = 0; i < posts.size(); ++i) {
    g.post_ids_.push_back(posts[i].id);
    g.times_.push_back(posts[i].t);
    g.parents_[i] = static_cast<NodeId>(parent[i]);
    if (i != thread.root_index()) ++g.reply_counts_[parent[i]];
  }
  return g;
}

UserGraph::UserGraph(std::vector<std::string> names, NodeId anchor,
                     std::span<const UserEdge> edges)
    : names_(std::move(names)), anchor_(anchor) {
  const std::size_t n = names_.size();
  if (n == 0 || anchor_ >= n) throw InvalidArgument("anchor out of range");

  edges_.assign(edges.begin(), edges.end());
  for (const UserEdge& e : edges_) {
    if (e.from >= n || e.to >= n) throw InvalidArgument("edge endpoint out of range");
    if (e.from == e.to) throw InvalidArgument("self-loop on node " + names_[e.from]);
  }
  std::sort(edges_.begin(), edges_.end(), [](const UserEdge& a, const UserEdge& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return a.first_t < b.first_t;
  });
  // Sorted by time within a (from,to) run, so unique keeps the earliest.
  edges_.erase(std::unique(edges_.begin(), edges_.end(),
                           [](const UserEdge& a, const UserEdge& b) {
                             return a.from == b.from && a.to == b.to;
                           }),
               edges_.end());

  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  for (const UserEdge& e : edges_) {
    ++out_offsets_[e.from + 1];
    ++in_offsets_[e.to + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_offsets_[i + 1] += out_offsets_[i];
    in_offsets_[i + 1] += in_offsets_[i];
  }
  out_targets_.resize(edges_.size());
  in_sources_.resize(edges_.size());
  std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    out_targets_[k] = edges_[k].to;  // edges_ is grouped by `from` already
    in_sources_[in_fill[edges_[k].to]++] = edges_[k].from;
  }
  // in_sources_ runs come out sorted because edges_ is sorted by `from`.
}

UserGraph UserGraph::from_edges(std::size_t n, NodeId anchor, std::span<const UserEdge> edges) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return UserGraph(std::move(names), anchor, edges);
}

std::optional<NodeId> UserGraph::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<NodeId>(it - names_.begin());
}

std::span<const NodeId> UserGraph::out_neighbors(NodeId n) const {
  return std::span<const NodeId>(out_targets_).subspan(out_offsets_[n],
                                                        out_offsets_[n + 1] - out_offsets_[n]);
}

std::span<const NodeId> UserGraph::in_neighbors(NodeId n) const {
  return std::span<const NodeId>(in_sources_).subspan(in_offsets_[n],
                                                       in_offsets_[n + 1] - in_offsets_[n]);
}

bool UserGraph::has_edge(NodeId from, NodeId to) const {
  auto nb = out_neighbors(from);
  return std::binary_search(nb.begin(), nb.end(), to);
}

std::optional<Timestamp> UserGraph::edge_time(NodeId from, NodeId to) const {
  auto nb = out_neighbors(from);
  auto it = std::lower_bound(nb.begin(), nb.end(), to);
  if (it == nb.end() || *it != to) return std::nullopt;
  return edges_[out_offsets_[from] + static_cast<std::size_t>(it - nb.begin())].first_t;
}

UserGraph build_user_graph(const ThreadRecord& thread) {
  const auto posts = thread.posts();
  const auto parent = thread.parent_index();

  std::vector<std::string> names;
  std::unordered_map<std::string_view, NodeId> ids;  // views into thread's posts
  auto intern = [&](const std::string& author) {
    auto [it, inserted] = ids.emplace(author, static_cast<NodeId>(names.size()));
    if (inserted) names.push_back(author);
    return it->second;
  };
  intern(thread.root().author);
  std::vector<NodeId> author_of(posts.size());
  for (std::size_t i = 0; i < posts.size(); ++i) author_of[i] = intern(posts[i].author);

  std::vector<UserEdge> edges;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    if (i == thread.root_index()) continue;
    NodeId from = author_of[i];
    NodeId to = author_of[parent[i]];
    if (from != to) edges.push_back({from, to, posts[i].t});
  }
  return UserGraph(std::move(names), 0, edges);
}

std::string_view to_string(GraphKind k) {
  return k == GraphKind::User ? "user" : "reply";
}

namespace {

void fill_histograms(DegreeReport& r) {
  for (std::size_t d : r.in_degree) ++r.in_histogram[d];
  for (std::size_t d : r.out_degree) ++r.out_histogram[d];
}

}  // namespace

DegreeReport degree_sequences(const ReplyGraph& g) {
  DegreeReport r;
  r.kind = GraphKind::Reply;
  r.in_degree.resize(g.node_count());
  r.out_degree.resize(g.node_count());
  for (NodeId n = 0; n < g.node_count(); ++n) {
    r.in_degree[n] = g.reply_count(n);
    r.out_degree[n] = g.parent(n) ? 1 : 0;
  }
  fill_histograms(r);
  return r;
}

DegreeReport degree_sequences(const UserGraph& g) {
  DegreeReport r;
  r.kind = GraphKind::User;
  r.in_degree.resize(g.node_count());
  r.out_degree.resize(g.node_count());
  for (NodeId n = 0; n < g.node_count(); ++n) {
    r.in_degree[n] = g.in_degree(n);
    r.out_degree[n] = g.out_degree(n);
  }
  fill_histograms(r);
  return r;
}

}  // namespace convgraph
