#pragma once

#include <stdexcept>
#include <string>

namespace sphdeconv {

enum class ErrorKind {
  InvalidArgument,
  HypothesisViolation,
  NoConvergence,
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::HypothesisViolation: return "hypothesis_violation";
    case ErrorKind::NoConvergence: return "no_convergence";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library. The kind is stable and is what the
/// CLI reports in its machine-readable error output.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::InvalidArgument, message);
}

}  // namespace sphdeconv
