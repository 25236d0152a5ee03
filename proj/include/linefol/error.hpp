#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace linefol {

enum class ErrorCode {
  DivisionByZero,
  VarSetMismatch,
  UnknownVariable,
  PoleAtPoint,
  IdenticallyZeroDenominator,
  BothZero,
  DivisorZero,
  SyntaxError,
  ZeroDenominator,
  ZeroField,
  InternalInconsistency,
  ConstantFunction,
  WrongArity,
  ArityMismatch,
  SamplingExhausted,
  DegenerateDirection,
  DegenerateData,
  SingularMatrix,
  SingularPoint,
  DuplicateLines,
  NotALineField,
  PoleOnAllOfSpace,
  NotASolution,
  StructureViolation,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// that the CLI and the Python bindings can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error(ErrorCode::SyntaxError,
              what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace linefol
