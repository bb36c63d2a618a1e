#ifndef EISENFACT_ERRORS_HPP
#define EISENFACT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eisenfact {

enum class ErrorCode {
  DivisionByZero,
  UnknownConstant,
  UnsupportedDiscriminant,
  LatticeOverflow,
  NotAUnitSquare,
  NonUnitDivisor,
  OffLattice,
  UnknownCoefficient,
  InsufficientPrecision,
  UnknownGenerator,
  NotAFamily,
  SyntaxError,
  MalformedTransform,
  FrickeInExactMode,
  NonIntegerExponent,
  NonConvergent,
  InsufficientDepth,
  PrimeGenerationFailure,
  BadEntry,
  IoError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

// Syntax errors carry the byte offset of the offending token.
class ParseError : public Error {
public:
  ParseError(std::size_t offset, const std::string& msg)
      : Error(ErrorCode::SyntaxError,
              msg + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

}  // namespace eisenfact

#endif
