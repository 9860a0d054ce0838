#pragma once

#include <stdexcept>
#include <string>

namespace hhc {

// Bad hyperparameters or config file contents. CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable or malformed input data. CLI exit code 3.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Training produced a NaN/inf loss term. CLI exit code 4.
struct NonFiniteLossError : std::runtime_error {
  NonFiniteLossError(int epoch, const std::string& term)
      : std::runtime_error("non-finite " + term + " loss at epoch " +
                           std::to_string(epoch)),
        epoch(epoch),
        term(term) {}
  int epoch;
  std::string term;
};

// Malformed serialized tree. Carries the byte offset of the problem.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)),
        position(position) {}
  std::size_t position;
};

}  // namespace hhc
