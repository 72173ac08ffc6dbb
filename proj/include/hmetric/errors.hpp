#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hmetric {

/// Malformed input text; carries the source name and 1-based line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}
  const std::string& source() const noexcept { return source_; }
  int line() const noexcept { return line_; }

 private:
  std::string source_;
  int line_;
};

/// An operation was asked of an object that does not meet its
/// preconditions. `witness` names the offending items.
class Refusal : public std::runtime_error {
 public:
  Refusal(const std::string& reason, std::vector<std::string> witness = {})
      : std::runtime_error(reason), witness_(std::move(witness)) {}
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  std::vector<std::string> witness_;
};

/// An enumeration bound (points, word length, assignments) was exceeded.
class CapExceeded : public Refusal {
 public:
  using Refusal::Refusal;
};

/// A mathematical identity that must hold did not. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool condition, const std::string& message) {
  if (!condition) throw InternalError(message);
}

}  // namespace hmetric
