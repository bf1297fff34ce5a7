#pragma once

#include <stdexcept>
#include <string>

#include "weighwright/weighing.hpp"

namespace weighwright {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pans of different total cardinality, or a coin on both pans.
class UnbalancedPans : public Error {
 public:
  using Error::Error;
};

class MalformedTree : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class EmptyTable : public Error {
 public:
  using Error::Error;
};

// Carries the outcome prefix of the offending node.
class PrefixError : public Error {
 public:
  PrefixError(const std::string& what, Path prefix);
  const Path& prefix() const { return prefix_; }

 private:
  Path prefix_;
};

class MissingWeighing : public PrefixError {
 public:
  explicit MissingWeighing(Path prefix);
};

class IrreparableNode : public PrefixError {
 public:
  explicit IrreparableNode(Path prefix);
};

class PreconditionViolated : public PrefixError {
 public:
  using PrefixError::PrefixError;
};

class FinisherInfeasible : public PrefixError {
 public:
  using PrefixError::PrefixError;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace weighwright
