#pragma once

#include <stdexcept>
#include <string>

namespace flintlab {

// Requested precision exceeds the configured ceiling.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of the operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Error intervals still overlap at the precision cap.
class UndecidableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CheckpointMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed checkpoint, fixture or decimal string.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace flintlab
