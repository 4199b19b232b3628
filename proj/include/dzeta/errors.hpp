#pragma once

#include <stdexcept>
#include <string>

namespace dzeta {

/// Input that violates a documented contract (bad field parameters, singular
/// curves, non-commuting automorphisms, malformed JSON). Maps to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured cap was hit: enumeration budget, cover-closure limits, or
/// 64-bit overflow in exact arithmetic. Maps to exit code 3.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dzeta
