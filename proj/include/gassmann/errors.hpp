#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gassmann {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OrderExceeded : public Error {
 public:
  explicit OrderExceeded(std::size_t bound)
      : Error("group order exceeds bound " + std::to_string(bound)), bound_(bound) {}
  std::size_t bound() const { return bound_; }

 private:
  std::size_t bound_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class IndexMismatch : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedForm : public Error {
 public:
  using Error::Error;
};

class InvalidDatum : public Error {
 public:
  using Error::Error;
};

class NotNonresidue : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  using Error::Error;
};

// Caller violated a documented precondition.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace gassmann
