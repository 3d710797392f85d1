#ifndef JACOBI_ERROR_HPP
#define JACOBI_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace jacobi {

/// Every domain failure the library reports. The CLI maps these to exit
/// status 1 (domain) or 2 (parse).
enum class ErrorCode {
  // diagram validation
  DanglingHalfEdge,
  NonTrivalentVertex,
  UnmatchedHalfEdge,
  EmptySlot,
  DuplicateSlot,
  NonPositiveDegree,
  MalformedDigest,
  // relations and linear algebra
  LegNotAdjacentToVertex,
  DegreeTooLargeForBudget,
  BasisMismatch,
  // reduction
  NoEligibleLeg,
  LeglessComponent,
  StepBudgetExhausted,
  NotSlidePair,
  // claspers
  NotStrict,
  BadValence,
  NonIntegerDegree,
  NotSimple,
  // certificates
  UnknownDigest,
  DegreeMismatch,
  // text input
  Parse,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string token, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        token_(std::move(token)) {}

  ErrorCode code() const noexcept { return code_; }
  /// The offending token (half-edge, leaf, digest, ...) or empty.
  const std::string& token() const noexcept { return token_; }

 private:
  ErrorCode code_;
  std::string token_;
};

/// Parse failure carrying a 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(ErrorCode::Parse, {}, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace jacobi

#endif  // JACOBI_ERROR_HPP
