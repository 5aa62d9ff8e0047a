#pragma once

// Thread-level structure metrics and empirical CDFs over a corpus.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convgraph/graphs.hpp"
#include "convgraph/thread_model.hpp"

namespace convgraph {

/// Median gap between chronologically consecutive posts, in seconds. Even
/// gap counts take the lower middle gap, so the result is always an observed
/// gap. Throws UndefinedMetric for threads with fewer than two posts.
double responsiveness_median(const ThreadRecord& thread);

/// Fraction of directed edges whose reverse edge also exists; 0 without edges.
double reciprocity(const UserGraph& g);

/// Unnormalised directed betweenness of the anchor:
///   sum over ordered (s, t), s != t, both != anchor, of sigma_st(anchor) / sigma_st
/// with hop-count shortest paths. Unreachable pairs contribute nothing.
double op_betweenness(const UserGraph& g);

enum class BranchingMode {
  Internal,  // replies per post that received at least one reply
  All,       // replies per post over every post, (N - 1) / N
};

/// Throws UndefinedMetric in Internal mode when no post has replies.
double branching_factor(const ReplyGraph& r, BranchingMode mode = BranchingMode::Internal);

class Ecdf {
 public:
  /// Throws UndefinedMetric on empty input.
  explicit Ecdf(std::vector<double> samples);

  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> fractions() const noexcept { return fractions_; }
  std::size_t size() const noexcept { return values_.size(); }

  /// Fraction of samples <= x.
  double operator()(double x) const;

 private:
  std::vector<double> values_;
  std::vector<double> fractions_;
};

Ecdf ecdf(std::vector<double> samples);

struct MacroRecord {
  std::string thread_id;
  std::size_t n_posts = 0;
  std::size_t n_users = 0;
  std::optional<double> responsiveness_median;  // undefined for single-post threads
  double reciprocity = 0.0;
  double op_betweenness = 0.0;
  std::optional<double> branching_factor;  // undefined when no post has replies (Internal)
};

MacroRecord compute_macro(const ThreadRecord& thread,
                          BranchingMode mode = BranchingMode::Internal);

}  // namespace convgraph
