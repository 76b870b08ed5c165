#pragma once

#include <stdexcept>

namespace qprobe {

// Register or matrix dimension outside the supported range.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Basis index or argument outside the operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid experiment configuration. The message names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Library misuse: empty or mixed inputs to aggregation routines.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A protocol step was invoked out of order.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Internal invariant breach; indicates a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qprobe
