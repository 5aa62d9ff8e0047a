#include "convgraph/thread_model.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace convgraph {

namespace {

using json = nlohmann::json;

const json& require(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(line_no, std::string("missing key '") + key + "'");
  return *it;
}

std::string require_string(const json& obj, const char* key, std::size_t line_no) {
  const json& v = require(obj, key, line_no);
  if (!v.is_string()) throw ParseError(line_no, std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

PostRecord parse_post(const json& p, std::size_t line_no) {
  if (!p.is_object()) throw ParseError(line_no, "post entries must be objects");
  PostRecord post;
  post.id = require_string(p, "id", line_no);
  post.author = require_string(p, "author", line_no);

  const json& parent = require(p, "parent", line_no);
  if (parent.is_string()) {
    post.parent = parent.get<std::string>();
  } else if (!parent.is_null()) {
    throw ParseError(line_no, "key 'parent' must be a string or null");
  }

  const json& t = require(p, "t", line_no);
  if (!t.is_number_integer()) throw ParseError(line_no, "key 't' must be an integer");
  post.t = t.get<Timestamp>();
  return post;
}

}  // namespace

std::string_view to_string(Source s) {
  return s == Source::Focus ? "focus" : "baseline";
}

std::optional<Source> parse_source(std::string_view text) {
  if (text == "focus") return Source::Focus;
  if (text == "baseline") return Source::Baseline;
  return std::nullopt;
}

ThreadRecord make_thread(std::string thread_id, Source source, std::vector<PostRecord> posts) {
  if (posts.empty()) throw ValidationError(thread_id, "thread has no posts");

  std::unordered_map<std::string_view, std::size_t> by_id;
  by_id.reserve(posts.size());
  for (std::size_t i = 0; i < posts.size(); ++i) {
    if (posts[i].id.empty()) throw ValidationError(thread_id, "post with empty id");
    if (!by_id.emplace(posts[i].id, i).second) {
      throw ValidationError(thread_id, "duplicate post id '" + posts[i].id + "'");
    }
  }

  std::vector<std::size_t> parent_idx(posts.size());
  std::optional<std::size_t> root;
  for (std::size_t i = 0; i < posts.size(); ++i) {
    if (!posts[i].parent) {
      if (root) throw ValidationError(thread_id, "more than one root post");
      root = i;
      parent_idx[i] = i;
      continue;
    }
    auto it = by_id.find(*posts[i].parent);
    if (it == by_id.end()) {
      throw ValidationError(thread_id, "post '" + posts[i].id + "' replies to unknown post '" +
                                           *posts[i].parent + "'");
    }
    parent_idx[i] = it->second;
  }
  if (!root) throw ValidationError(thread_id, "no root post");

  // With one root and one parent per post, the links form a tree iff every
  // post reaches the root. Walks are memoised through `state`.
  enum : unsigned char { kUnseen, kOnPath, kReaches };
  std::vector<unsigned char> state(posts.size(), kUnseen);
  state[*root] = kReaches;
  std::vector<std::size_t> path;
  for (std::size_t start = 0; start < posts.size(); ++start) {
    std::size_t cur = start;
    while (state[cur] == kUnseen) {
      state[cur] = kOnPath;
      path.push_back(cur);
      cur = parent_idx[cur];
    }
    if (state[cur] == kOnPath) {
      throw ValidationError(thread_id, "reply cycle through post '" + posts[cur].id + "'");
    }
    for (std::size_t p : path) state[p] = kReaches;
    path.clear();
  }

  ThreadRecord out;
  out.thread_id_ = std::move(thread_id);
  out.source_ = source;
  out.posts_ = std::move(posts);
  out.parent_idx_ = std::move(parent_idx);
  out.root_ = *root;
  return out;
}

ThreadRecord parse_thread_line(std::string_view line, std::size_t line_no) {
  json doc = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw ParseError(line_no, "invalid JSON");
  if (!doc.is_object()) throw ParseError(line_no, "thread must be a JSON object");

  std::string thread_id = require_string(doc, "thread_id", line_no);
  std::string source_text = require_string(doc, "source", line_no);
  auto source = parse_source(source_text);
  if (!source) throw ParseError(line_no, "unknown source '" + source_text + "'");

  const json& posts_json = require(doc, "posts", line_no);
  if (!posts_json.is_array()) throw ParseError(line_no, "key 'posts' must be an array");

  std::vector<PostRecord> posts;
  posts.reserve(posts_json.size());
  for (const json& p : posts_json) posts.push_back(parse_post(p, line_no));

  return make_thread(std::move(thread_id), *source, std::move(posts));
}

ParseResult parse_corpus(std::istream& in) {
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    try {
      result.threads.push_back(parse_thread_line(line, line_no));
    } catch (const ValidationError& e) {
      result.issues.push_back({line_no, e.thread_id(), e.what()});
    } catch (const ParseError& e) {
      result.issues.push_back({line_no, {}, e.what()});
    }
  }
  return result;
}

std::string serialize_thread(const ThreadRecord& thread) {
  json posts = json::array();
  for (const PostRecord& p : thread.posts()) {
    json jp = {{"id", p.id}, {"parent", nullptr}, {"author", p.author}, {"t", p.t}};
    if (p.parent) jp["parent"] = *p.parent;
    posts.push_back(std::move(jp));
  }
  json doc = {{"thread_id", thread.thread_id()},
              {"source", to_string(thread.source())},
              {"posts", std::move(posts)}};
  return doc.dump();
}

bool passes_filter(const ThreadRecord& thread, const FilterPolicy& policy) {
  if (thread.size() < policy.min_extra_posts + 1) return false;
  if (policy.drop_deleted_root && thread.root().author == policy.deleted_sentinel) return false;
  return true;
}

std::vector<ThreadRecord> filter_corpus(std::span<const ThreadRecord> threads,
                                        const FilterPolicy& policy) {
  std::vector<ThreadRecord> kept;
  for (const ThreadRecord& t : threads) {
    if (passes_filter(t, policy)) kept.push_back(t);
  }
  return kept;
}

Lifetime thread_lifetime(const ThreadRecord& thread) {
  Lifetime life{thread.root().t, thread.root().t};
  for (const PostRecord& p : thread.posts()) life.end = std::max(life.end, p.t);
  return life;
}

}  // namespace convgraph
