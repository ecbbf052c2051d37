#include "plexdist/error.hpp"

namespace plexdist {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::kInvalidArgument:
    return "invalid-argument";
  case ErrorKind::kContractViolation:
    return "contract-violation";
  case ErrorKind::kInvalidTopology:
    return "invalid-topology";
  case ErrorKind::kInvalidNumbering:
    return "invalid-numbering";
  case ErrorKind::kUnsupportedShape:
    return "unsupported-shape";
  case ErrorKind::kInconsistentLayout:
    return "inconsistent-layout";
  case ErrorKind::kIncompleteClosure:
    return "incomplete-closure";
  case ErrorKind::kParse:
    return "parse-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace plexdist
