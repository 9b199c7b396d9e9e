#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace su11walk {

/// Raised when an argument violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a truncated ladder expansion cannot meet the requested tail bound.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double achieved_tail, std::size_t required_cutoff)
      : std::runtime_error(what), achieved_tail_(achieved_tail), required_cutoff_(required_cutoff) {}

  double achieved_tail() const noexcept { return achieved_tail_; }
  /// Smallest cutoff estimated to satisfy the requested bound.
  std::size_t required_cutoff() const noexcept { return required_cutoff_; }

 private:
  double achieved_tail_;
  std::size_t required_cutoff_;
};

/// Internal consistency failure (e.g. a Gram matrix that is not positive semidefinite).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace detail
}  // namespace su11walk
