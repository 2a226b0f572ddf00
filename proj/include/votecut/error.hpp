#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace votecut {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An argument violated an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search would exceed the configured node budget.
class SearchRefused : public Error {
 public:
  SearchRefused(std::uint64_t estimate, std::uint64_t guard)
      : Error("search space of ~" + std::to_string(estimate) +
              " actions exceeds guard " + std::to_string(guard)),
        estimate_(estimate),
        guard_(guard) {}

  std::uint64_t estimate() const noexcept { return estimate_; }
  std::uint64_t guard() const noexcept { return guard_; }

 private:
  std::uint64_t estimate_;
  std::uint64_t guard_;
};

}  // namespace votecut
