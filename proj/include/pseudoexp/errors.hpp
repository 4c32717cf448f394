#pragma once

#include <stdexcept>
#include <string>

namespace pexp {

// Base for every error raised by the library. Callers that only care about
// "something was wrong with the input" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unregistered indeterminate, bad involution, malformed state.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Precondition on a mathematical input failed (zero where nonzero required,
// singular matrix, wrong parity, rank-deficient input, ...).
class MathError : public Error {
 public:
  using Error::Error;
};

// The requested construction exists mathematically but is outside what the
// library can produce exactly. Never a wrong answer, always this.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class NotInDomainError : public Error {
 public:
  using Error::Error;
};

// A query landed in the Q-span of the basis but not in its Z-span; the basis
// element `index` has to be divided by `q` first.
class NeedsRefinementError : public Error {
 public:
  NeedsRefinementError(std::size_t index, unsigned long q)
      : Error("element needs basis refinement: divide basis element " +
              std::to_string(index) + " by " + std::to_string(q)),
        index_(index),
        q_(q) {}
  std::size_t index() const noexcept { return index_; }
  unsigned long q() const noexcept { return q_; }

 private:
  std::size_t index_;
  unsigned long q_;
};

}  // namespace pexp
