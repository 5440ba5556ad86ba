#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexishot {

// Input that fails validation. Carries the source name and a 1-based line
// number when the problem is tied to one (0 otherwise).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& message, std::size_t line = 0,
                     std::string source = {});

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& source() const noexcept { return source_; }

  // Copy of this error attributed to `source`.
  DataError in(std::string source) const;

 private:
  std::string message_;
  std::size_t line_;
  std::string source_;
};

// Bad command-line usage: unknown flag, missing argument, unreadable path.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lexishot
