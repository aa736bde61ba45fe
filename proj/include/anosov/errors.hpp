#pragma once

#include <stdexcept>
#include <string>

namespace anosov {

/// A caller-supplied value violates a documented precondition (bad matrix, unknown orbit, bounds).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an arc system or pushoff lands in non-general position; callers retry with new choices.
class DegenerateGeometry : public std::runtime_error {
 public:
  explicit DegenerateGeometry(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace anosov
