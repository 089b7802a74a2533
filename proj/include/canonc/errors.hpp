#pragma once

#include <stdexcept>
#include <string>

namespace canonc {

struct SourcePos {
  int line = 0;
  int column = 0;
};

/// A non-fatal message attached to a source position (e.g. an ignored
/// preprocessor line).
struct Diagnostic {
  SourcePos pos;
  std::string code;
  std::string message;

  // file:line:col: code: message
  std::string format(const std::string& file) const;
};

/// Base of every error the library throws. `code()` is a stable identifier
/// such as "SyntaxError" or "UnterminatedComment".
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string message, SourcePos pos = {})
      : std::runtime_error(message), code_(std::move(code)), pos_(pos) {}

  const std::string& code() const noexcept { return code_; }
  SourcePos pos() const noexcept { return pos_; }
  Diagnostic diagnostic() const { return {pos_, code_, what()}; }

 private:
  std::string code_;
  SourcePos pos_;
};

class LexError : public Error {
  using Error::Error;
};

// SyntaxError and UnsupportedConstruct.
class ParseError : public Error {
  using Error::Error;
};

// Post-parse checks: UndeclaredIdentifier, DuplicateFunction, ...
class SemanticError : public Error {
  using Error::Error;
};

class FixpointNotReached : public Error {
 public:
  explicit FixpointNotReached(int iterations)
      : Error("FixpointNotReached",
              "normalization did not converge within " +
                  std::to_string(iterations) + " iterations") {}
};

// InvalidParameter, ParameterMismatch.
class ParameterError : public Error {
  using Error::Error;
};

// UnknownFunction, ArityMismatch, UnsupportedForEvaluation.
class EvalError : public Error {
  using Error::Error;
};

}  // namespace canonc
