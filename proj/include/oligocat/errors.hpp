#pragma once

#include <stdexcept>
#include <string>

namespace oligo {

// Raised when a verification-style operation detects a genuine failure
// (as opposed to a malformed request).
struct VerifyError : std::runtime_error {
  explicit VerifyError(const std::string& m) : std::runtime_error(m) {}
};

// Raised on malformed input: wrong class, bad encoding, inconsistent sizes.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& m) : std::runtime_error(m) {}
};

// Raised when a request exceeds configured size/enumeration bounds.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace oligo
