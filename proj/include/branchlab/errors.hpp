#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace branchlab {

enum class ErrorCode {
  kZeroState,
  kInvalidState,
  kUnknownLabel,
  kZeroProbabilityOutcome,
  kRealizedOperand,
  kEmptyOrdering,
  kUnknownVertex,
  kCycleAttempt,
  kUnknownAtomLabel,
  kUnknownState,
  kUnknownMeasurement,
  kParse,
  kResolve,
  kDepthExceeded,
  kIo,
  kConfig,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure with a 1-based source position inside the offending token.
class ParseError : public Error {
 public:
  ParseError(int line, int column, std::string token,
             std::vector<std::string> expected, const std::string& message)
      : Error(ErrorCode::kParse, message),
        line_(line),
        column_(column),
        token_(std::move(token)),
        expected_(std::move(expected)) {}

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }
  [[nodiscard]] const std::string& token() const { return token_; }
  [[nodiscard]] const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string token_;
  std::vector<std::string> expected_;
};

// A name that parsed fine but does not resolve against earlier declarations.
class ResolveError : public Error {
 public:
  ResolveError(int line, int column, std::string name, const std::string& message)
      : Error(ErrorCode::kResolve, message),
        line_(line),
        column_(column),
        name_(std::move(name)) {}

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }
  [[nodiscard]] const std::string& name() const { return name_; }

 private:
  int line_;
  int column_;
  std::string name_;
};

}  // namespace branchlab
