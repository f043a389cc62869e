#pragma once

#include <stdexcept>
#include <string>

namespace pasearch {

/// Base class for all library errors. Subclasses map onto CLI exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (bad record, bad date, bad canonical id).
class ParseError : public Error {
 public:
  using Error::Error;
  ParseError(std::size_t line, const std::string& msg)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

/// Inputs parse but contradict each other or a contract (duplicate query id,
/// contradictory family table, malformed run).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Lookup of a key that is not present.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration or option combination.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Filesystem / stream failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace pasearch
