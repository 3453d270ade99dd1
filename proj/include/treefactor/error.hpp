#pragma once

#include <stdexcept>
#include <string>

namespace treefactor {

/// Bad input: malformed words, invalid presentations, violated preconditions.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string &what) : std::invalid_argument(what) {}
};

/// A request that would exceed a configured resource bound.
class ResourceLimitError : public std::runtime_error {
public:
  explicit ResourceLimitError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace treefactor
