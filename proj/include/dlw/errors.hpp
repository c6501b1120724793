#ifndef DLW_ERRORS_HPP
#define DLW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dlw {

/// Base class for all errors raised by the workbench.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Syntax or well-formedness error in an input text; carries a source location.
class ParseError : public Error {
 public:
  ParseError(std::string msg, int line, int column)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Raised when a theory has more defaults than the configured enumeration bound.
class EnumerationBoundError : public Error {
 public:
  explicit EnumerationBoundError(const std::string& msg) : Error(msg) {}
};

/// Violated precondition of an operation (bad alphabet, malformed process,
/// unsupported construction, non-strongest extension, ...).
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& msg) : Error(msg) {}
};

/// Renaming an alphabet would clash with an atom outside the renamed set.
class RenamingCollisionError : public ContractError {
 public:
  explicit RenamingCollisionError(const std::string& msg) : ContractError(msg) {}
};

}  // namespace dlw

#endif
