#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hhks {

// Base class of every error raised by the library. Callers that only need a
// diagnostic can catch this; the CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
  public:
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string &what) : Error(what) {}
};

class FieldMismatch : public Error {
  public:
    FieldMismatch(unsigned a, unsigned b)
        : Error("field mismatch: Q(zeta_" + std::to_string(a) + ") vs Q(zeta_" +
                std::to_string(b) + ")") {}
};

// The defining relations of a quadratic algebra are linearly dependent.
class RelationDependence : public Error {
  public:
    using Error::Error;
};

// A strand or product needs a graded component that was not built.
class DegreeUnavailable : public Error {
  public:
    using Error::Error;
};

// A relation perturbation fails the Hochschild 2-cocycle condition.
class NotACocycle : public Error {
  public:
    NotACocycle(const std::string &what, std::size_t direction)
        : Error(what), direction_(direction) {}
    std::size_t direction() const noexcept { return direction_; }

  private:
    std::size_t direction_;
};

class PoleAtPoint : public Error {
  public:
    using Error::Error;
};

class UnboundParameter : public Error {
  public:
    using Error::Error;
};

// A family constraint does not vanish at the requested point.
class ConstraintViolated : public Error {
  public:
    using Error::Error;
};

// Parse errors carry a 1-based line/column and, once loaded from disk, the
// file name.
class ParseError : public Error {
  public:
    ParseError(const std::string &kind, const std::string &msg, int line, int col,
               const std::string &file = {})
        : Error((file.empty() ? "" : file + ": ") + kind + " at " + std::to_string(line) + ":" +
                std::to_string(col) + ": " + msg),
          message_(msg), file_(file), line_(line), col_(col) {}
    const std::string &message() const noexcept { return message_; }
    const std::string &file() const noexcept { return file_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return col_; }

  private:
    std::string message_;
    std::string file_;
    int line_;
    int col_;
};

class SyntaxError : public ParseError {
  public:
    SyntaxError(const std::string &msg, int line, int col, const std::string &file = {})
        : ParseError("syntax error", msg, line, col, file) {}
};

class NonQuadraticTerm : public ParseError {
  public:
    NonQuadraticTerm(const std::string &msg, int line, int col, const std::string &file = {})
        : ParseError("non-quadratic term", msg, line, col, file) {}
};

class UnknownIdentifier : public ParseError {
  public:
    UnknownIdentifier(const std::string &msg, int line, int col, const std::string &file = {})
        : ParseError("unknown identifier", msg, line, col, file) {}
};

} // namespace hhks
