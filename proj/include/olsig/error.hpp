#pragma once

#include <stdexcept>
#include <string>

namespace olsig {

enum class ErrorCode {
  InvalidArgument,
  LevelMismatch,
  DivisionByZero,
  Singular,
  DimensionMismatch,
  NotFound,
  CapExceeded,
  BudgetExceeded,
  ConstructionMismatch,
  NotAPartialSpread,
  InjectivityFail,
  NotInGroup,
  Unsupported,
  Format,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace olsig
