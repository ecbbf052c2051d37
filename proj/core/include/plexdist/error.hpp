#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plexdist {

enum class ErrorKind {
  kInvalidArgument,
  kContractViolation,
  kInvalidTopology,
  kInvalidNumbering,
  kUnsupportedShape,
  kInconsistentLayout,
  kIncompleteClosure,
  kParse,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and tests) can distinguish precondition violations from
/// malformed topology or layout.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

} // namespace plexdist
