#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace convgraph {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A corpus line that is not valid JSON or does not follow the thread schema.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A thread whose posts do not form a single rooted reply tree.
class ValidationError : public Error {
 public:
  ValidationError(std::string thread_id, const std::string& what)
      : Error("thread '" + thread_id + "': " + what), thread_id_(std::move(thread_id)) {}

  const std::string& thread_id() const noexcept { return thread_id_; }

 private:
  std::string thread_id_;
};

/// A metric evaluated on input for which it has no value (e.g. median of nothing).
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied argument outside the operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace convgraph
