#pragma once

#include <stdexcept>
#include <string>

namespace overdet {

/// Malformed or out-of-range user input (bad syntax, ragged matrix, parameter
/// outside its admissible range, mismatched dimensions).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured computational cap was hit (degree, variable count, pair count).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure left its valid range (overflow, divergent search).
class RangeError : public std::runtime_error {
 public:
  explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace overdet
