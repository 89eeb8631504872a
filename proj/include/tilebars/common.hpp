#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tilebars {

// Ordered so that every serialization and iteration is deterministic.
using TermCounts = std::map<std::string, std::int64_t, std::less<>>;

/// Base of all errors raised by the library. `exit_code()` is the process
/// exit status the CLI reports for errors of this kind.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 5; }
};

/// Missing, unreadable or malformed input file.
class InputError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// A requested query or document id does not exist.
class LookupError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

/// Training data is empty or unusable.
class DataError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
};

/// Internal invariant or precondition violated.
class InvariantError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 5; }
};

using WarningHandler = std::function<void(std::string_view)>;

/// Routes a warning to the installed handler (stderr by default).
void warn(std::string_view message);

/// Installs `handler` and returns the previous one. An empty handler
/// restores the stderr default.
WarningHandler set_warning_handler(WarningHandler handler);

void add_counts(TermCounts& into, const TermCounts& from);

std::int64_t total_count(const TermCounts& counts);

}  // namespace tilebars
