#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace davenport {

// Malformed arguments: wrong dimension, non-prime, non-coprime moduli, ...
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of a construction does not hold.
class PreconditionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// An enumeration cap or a search node budget was exceeded.
class ResourceLimit : public std::runtime_error {
public:
  explicit ResourceLimit(const std::string& what, std::size_t partial_lower_bound = 0)
      : std::runtime_error(what), partial_lower_bound_(partial_lower_bound) {}

  /// Longest irreducible length observed before the search was aborted.
  std::size_t partial_lower_bound() const noexcept { return partial_lower_bound_; }

private:
  std::size_t partial_lower_bound_;
};

// A runtime check of a proved statement failed. Carries a serialized
// counterexample so that callers can persist it.
class Falsification : public std::runtime_error {
public:
  Falsification(const std::string& what, std::string counterexample)
      : std::runtime_error(what), counterexample_(std::move(counterexample)) {}

  const std::string& counterexample() const noexcept { return counterexample_; }

private:
  std::string counterexample_;
};

}  // namespace davenport
