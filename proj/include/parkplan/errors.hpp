#pragma once

#include <stdexcept>
#include <string>

namespace parkplan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix shape does not fit the operation (non-square, rows > cols, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A value outside its mathematical domain (negative or non-finite distance).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Fewer available spaces than the operation needs.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Pieces of a pipeline that do not belong together (maps vs. solution, ...).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. The message carries `name:line:column`.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column,
             const std::string& what)
      : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace parkplan
