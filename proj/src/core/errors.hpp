#pragma once

#include <stdexcept>
#include <string>

namespace simex {

struct MalformedMapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnreachableGoalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedPathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PathDivergedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TerminalStateError : std::logic_error {
  using std::logic_error::logic_error;
};

struct ProtocolViolationError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace simex
