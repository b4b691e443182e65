#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace monoforge {

/// Base class of every error raised by the library. The CLI maps these to
/// exit code 2 (input/usage) unless a more specific mapping applies.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class MissingVariable : public Error {
 public:
  explicit MissingVariable(std::size_t var)
      : Error("missing assignment for variable " + std::to_string(var)), var_(var) {}
  std::size_t var() const noexcept { return var_; }

 private:
  std::size_t var_;
};

class TermBudgetExceeded : public Error {
 public:
  explicit TermBudgetExceeded(std::size_t cap)
      : Error("expansion exceeded term budget of " + std::to_string(cap)), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class NotMonotone : public Error {
 public:
  NotMonotone() : Error("circuit contains a negative constant") {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("inverse of zero field element") {}
};

class NotADivisor : public Error {
 public:
  NotADivisor(std::size_t k, std::size_t n)
      : Error(std::to_string(k) + " does not divide " + std::to_string(n)) {}
};

class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

class VariableUniverseMismatch : public Error {
 public:
  using Error::Error;
};

class NotRegular : public Error {
 public:
  NotRegular() : Error("graph is not regular") {}
};

class GraphExhausted : public Error {
 public:
  explicit GraphExhausted(std::size_t step)
      : Error("no edge left before choosing matching edge " + std::to_string(step)),
        step_(step) {}
  /// 1-based index of the pick that failed.
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class NotInducedMatching : public Error {
 public:
  NotInducedMatching() : Error("matching is not an induced matching of the graph") {}
};

class WeightExceedsLength : public Error {
 public:
  WeightExceedsLength(std::size_t weight, std::size_t length)
      : Error("weight " + std::to_string(weight) + " exceeds length " + std::to_string(length)),
        weight_(weight),
        length_(length) {}
  std::size_t weight() const noexcept { return weight_; }
  std::size_t length() const noexcept { return length_; }

 private:
  std::size_t weight_;
  std::size_t length_;
};

class SparsityExceedsRows : public Error {
 public:
  SparsityExceedsRows(std::size_t s, std::size_t n)
      : Error("sparsity " + std::to_string(s) + " exceeds row count " + std::to_string(n)) {}
};

class ParameterDegeneration : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class SunflowerNotFound : public Error {
 public:
  explicit SunflowerNotFound(std::size_t slice)
      : Error("no sunflower found among the sets of size " + std::to_string(slice)), slice_(slice) {}
  std::size_t slice() const noexcept { return slice_; }

 private:
  std::size_t slice_;
};

}  // namespace monoforge
