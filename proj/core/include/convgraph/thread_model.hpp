#pragma once

// Threaded-conversation records and the line-delimited JSON corpus format.
//
// Each corpus line holds one thread:
//   {"thread_id": "...", "source": "focus"|"baseline",
//    "posts": [{"id": "...", "parent": "..."|null, "author": "...", "t": 1234}, ...]}

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "convgraph/error.hpp"

namespace convgraph {

using Timestamp = std::int64_t;  // Unix seconds

enum class Source { Focus, Baseline };

std::string_view to_string(Source s);
std::optional<Source> parse_source(std::string_view text);

struct PostRecord {
  std::string id;
  std::optional<std::string> parent;  // empty only for the root post
  std::string author;
  Timestamp t = 0;

  bool operator==(const PostRecord&) const = default;
};

/// One conversation thread. Instances produced by make_thread / parse_corpus
/// always hold a valid reply tree.
class ThreadRecord {
 public:
  ThreadRecord() = default;

  const std::string& thread_id() const noexcept { return thread_id_; }
  Source source() const noexcept { return source_; }
  std::span<const PostRecord> posts() const noexcept { return posts_; }
  std::size_t size() const noexcept { return posts_.size(); }

  /// Index of the post without a parent.
  std::size_t root_index() const noexcept { return root_; }
  const PostRecord& root() const { return posts_[root_]; }

  /// Parent post index for every post; the root maps to itself.
  std::span<const std::size_t> parent_index() const noexcept { return parent_idx_; }

  bool operator==(const ThreadRecord& o) const {
    return thread_id_ == o.thread_id_ && source_ == o.source_ && posts_ == o.posts_;
  }

  friend ThreadRecord make_thread(std::string thread_id, Source source,
                                  std::vector<PostRecord> posts);

 private:
  std::string thread_id_;
  Source source_ = Source::Focus;
  std::vector<PostRecord> posts_;
  std::vector<std::size_t> parent_idx_;
  std::size_t root_ = 0;
};

/// Validates the tree invariants and builds a thread.
/// Throws ValidationError on empty input, duplicate or empty ids, missing
/// parents, zero or several roots, or reply cycles.
ThreadRecord make_thread(std::string thread_id, Source source, std::vector<PostRecord> posts);

struct FilterPolicy {
  std::size_t min_extra_posts = 5;
  bool drop_deleted_root = true;
  std::string deleted_sentinel = "[deleted]";
};

/// A line that could not be turned into a thread. `thread_id` is empty when
/// the line failed before the id could be read.
struct CorpusIssue {
  std::size_t line = 0;
  std::string thread_id;
  std::string message;
};

struct ParseResult {
  std::vector<ThreadRecord> threads;
  std::vector<CorpusIssue> issues;
};

/// Parses a single corpus line. Throws ParseError for malformed JSON or
/// schema violations and ValidationError for tree violations.
ThreadRecord parse_thread_line(std::string_view line, std::size_t line_no = 1);

/// Parses every line of `in`. Blank lines are skipped. A bad line is recorded
/// in `issues` and never stops the remaining lines from being read.
ParseResult parse_corpus(std::istream& in);

/// Renders a thread as one corpus line (no trailing newline).
std::string serialize_thread(const ThreadRecord& thread);

bool passes_filter(const ThreadRecord& thread, const FilterPolicy& policy);

/// Keeps threads with at least `min_extra_posts` replies and, when requested,
/// a root author different from the deleted sentinel. Order is preserved.
std::vector<ThreadRecord> filter_corpus(std::span<const ThreadRecord> threads,
                                        const FilterPolicy& policy);

struct Lifetime {
  Timestamp start = 0;  // root post timestamp
  Timestamp end = 0;    // latest timestamp over all posts

  bool operator==(const Lifetime&) const = default;
};

Lifetime thread_lifetime(const ThreadRecord& thread);

}  // namespace convgraph
