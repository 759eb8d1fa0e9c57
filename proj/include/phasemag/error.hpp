#pragma once

#include <stdexcept>
#include <string>

namespace phasemag {

enum class ErrorKind {
  size_mismatch,     // two inputs that must agree in shape do not
  invalid_argument,  // precondition violated by a caller-supplied value
  io,                // filesystem failure or missing file
  format,            // file exists but its content is malformed
  symmetry,          // spectrum that should be Hermitian is not
  insufficient_data, // not enough usable spectral bins for an estimate
};

/// Every failure raised by the library. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, ErrorKind kind, const char* what) {
  if (!condition) throw Error(kind, what);
}

}  // namespace detail
}  // namespace phasemag
