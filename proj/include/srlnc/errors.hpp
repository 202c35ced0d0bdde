#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace srlnc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operands belong to different fields, or a FieldSpec request is invalid.
class FieldError : public Error {
  public:
    using Error::Error;
};

class DimensionError : public Error {
  public:
    using Error::Error;
};

class SingularMatrixError : public Error {
  public:
    using Error::Error;
};

/// A matrix or decoder lacks the rank an operation requires.
class RankError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

/// An enumeration would exceed its configured budget.
class BudgetExceededError : public Error {
  public:
    BudgetExceededError(const std::string& what, std::uint64_t required, std::uint64_t budget)
        : Error(what + ": requires " + std::to_string(required) + " items, budget is " +
                std::to_string(budget)),
          required_(required), budget_(budget) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

  private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

/// Degenerate input: a rational function evaluated at a root of its
/// denominator, or coincident points where distinct ones are required.
class DegenerateError : public Error {
  public:
    using Error::Error;
};

class PoleError : public DegenerateError {
  public:
    using DegenerateError::DegenerateError;
};

class CoincidentValuesError : public DegenerateError {
  public:
    using DegenerateError::DegenerateError;
};

}  // namespace srlnc
