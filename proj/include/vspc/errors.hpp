#pragma once

#include <stdexcept>
#include <string>

namespace vspc {

/// Caller passed arguments that violate an operation's preconditions.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Stored data is internally inconsistent (e.g. a spectrum that is not
/// conjugate-symmetric, a truncated snapshot file).
class DataCorruptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed-form solution evaluated at (or past) its singular time.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A bound that holds analytically was observed to fail.
class InequalityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A time-indexed provider was asked for a time it does not cover.
class MissingDataError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vspc
