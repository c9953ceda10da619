#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace badsci {

// Base for every error the library raises. `domain_guard()` separates input
// rejected on mathematical grounds (CLI exit 2) from I/O trouble (exit 1).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual bool domain_guard() const { return true; }
};

class ZeroRow : public Error {
 public:
  explicit ZeroRow(std::size_t row)
      : Error("row " + std::to_string(row) + " has zero norm"), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t col, const std::string& what)
      : Error("parse error at line " + std::to_string(line) + ", column " +
              std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }
  bool domain_guard() const override { return false; }

 private:
  std::size_t line_;
  std::size_t col_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
  bool domain_guard() const override { return false; }
};

class IoError : public Error {
 public:
  using Error::Error;
  bool domain_guard() const override { return false; }
};

class NotNormalized : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  explicit RankDeficient(std::size_t column)
      : Error("matrix is rank deficient: pivot collapsed at column " +
              std::to_string(column)),
        column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

class NotPSD : public Error {
 public:
  using Error::Error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

class BadResidue : public Error {
 public:
  using Error::Error;
};

}  // namespace badsci
