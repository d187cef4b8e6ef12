#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcvf {

enum class ErrorCode {
  DivisionByZero,
  PrecisionExhausted,
  NegativeElement,
  NonSquareLeadingCoefficient,
  NotIntegral,
  ExponentBlowup,
  UndefinedGauss,
  NotInfinitesimalDefinite,
  CoefficientsNotIntegral,
  VariableMismatch,
  InvalidArgument,
  Parse,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax error in the expression grammar. `offset` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace rcvf
