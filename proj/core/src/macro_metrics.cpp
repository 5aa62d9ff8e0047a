#include "convgraph/macro_metrics.hpp"

#include <algorithm>
#include <limits>

namespace convgraph {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

struct ShortestPaths {
  std::vector<std::size_t> dist;
  std::vector<double> count;  // number of shortest paths from the source
};

ShortestPaths bfs_counts(const UserGraph& g, NodeId source) {
  ShortestPaths sp{std::vector<std::size_t>(g.node_count(), kUnreached),
                   std::vector<double>(g.node_count(), 0.0)};
  std::vector<NodeId> queue;
  queue.reserve(g.node_count());
  sp.dist[source] = 0;
  sp.count[source] = 1.0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    for (NodeId v : g.out_neighbors(u)) {
      if (sp.dist[v] == kUnreached) {
        sp.dist[v] = sp.dist[u] + 1;
        queue.push_back(v);
      }
      if (sp.dist[v] == sp.dist[u] + 1) sp.count[v] += sp.count[u];
    }
  }
  return sp;
}

}  // namespace

double responsiveness_median(const ThreadRecord& thread) {
  if (thread.size() < 2) throw UndefinedMetric("responsiveness needs at least two posts");
  std::vector<Timestamp> times;
  times.reserve(thread.size());
  for (const PostRecord& p : thread.posts()) times.push_back(p.t);
  std::sort(times.begin(), times.end());

  std::vector<Timestamp> gaps(times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i) gaps[i - 1] = times[i] - times[i - 1];
  // Order statistic ceil(n/2), 1-based.
  const std::size_t k = (gaps.size() + 1) / 2 - 1;
  std::nth_element(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(k), gaps.end());
  return static_cast<double>(gaps[k]);
}

double reciprocity(const UserGraph& g) {
  if (g.edge_count() == 0) return 0.0;
  std::size_t reciprocated = 0;
  for (const UserEdge& e : g.edges()) {
    if (g.has_edge(e.to, e.from)) ++reciprocated;
  }
  return static_cast<double>(reciprocated) / static_cast<double>(g.edge_count());
}

double op_betweenness(const UserGraph& g) {
  const std::size_t n = g.node_count();
  if (n < 3) return 0.0;
  const NodeId op = g.anchor();
  const ShortestPaths from_op = bfs_counts(g, op);

  // A shortest s->t path runs through op iff d(s,op) + d(op,t) == d(s,t), and
  // then sigma_st(op) = sigma_s,op * sigma_op,t.
  double total = 0.0;
  for (NodeId s = 0; s < n; ++s) {
    if (s == op) continue;
    const ShortestPaths from_s = bfs_counts(g, s);
    if (from_s.dist[op] == kUnreached) continue;
    for (NodeId t = 0; t < n; ++t) {
      if (t == s || t == op || from_op.dist[t] == kUnreached) continue;
      if (from_s.dist[op] + from_op.dist[t] != from_s.dist[t]) continue;
      total += (from_s.count[op] * from_op.count[t]) / from_s.count[t];
    }
  }
  return total;
}

double branching_factor(const ReplyGraph& r, BranchingMode mode) {
  const std::size_t n = r.node_count();
  if (n == 0) throw UndefinedMetric("branching factor of an empty reply graph");
  const double replies = static_cast<double>(n - 1);
  if (mode == BranchingMode::All) return replies / static_cast<double>(n);

  std::size_t internal = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (r.reply_count(v) > 0) ++internal;
  }
  if (internal == 0) throw UndefinedMetric("branching factor: no post received a reply");
  return replies / static_cast<double>(internal);
}

Ecdf::Ecdf(std::vector<double> samples) : values_(std::move(samples)) {
  if (values_.empty()) throw UndefinedMetric("ECDF of an empty sample");
  std::sort(values_.begin(), values_.end());
  const double n = static_cast<double>(values_.size());
  fractions_.resize(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    fractions_[i] = static_cast<double>(i + 1) / n;
  }
}

double Ecdf::operator()(double x) const {
  auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

Ecdf ecdf(std::vector<double> samples) { return Ecdf(std::move(samples)); }

MacroRecord compute_macro(const ThreadRecord& thread, BranchingMode mode) {
  const ReplyGraph reply = build_reply_graph(thread);
  const UserGraph users = build_user_graph(thread);

  MacroRecord rec;
  rec.thread_id = thread.thread_id();
  rec.n_posts = thread.size();
  rec.n_users = users.node_count();
  if (thread.size() >= 2) rec.responsiveness_median = responsiveness_median(thread);
  rec.reciprocity = reciprocity(users);
  rec.op_betweenness = op_betweenness(users);
  if (mode == BranchingMode::All || reply.node_count() > 1) {
    rec.branching_factor = branching_factor(reply, mode);
  }
  return rec;
}

}  // namespace convgraph
