#pragma once

#include <stdexcept>
#include <string>

namespace clutterforge {

enum class Errc {
  Ok = 0,
  NotPrimePower,
  Unsupported,
  DivisionByZero,
  DimensionMismatch,
  TooLarge,
  FieldMismatch,
  BadIndex,
  NotConnectedComponent,
  OverlapError,
  BudgetExceeded,
  PreconditionViolated,
  WrongShape,
  WrongField,
  WrongFieldClass,
  NoSeriesPair,
  ParseError,
  VerificationFailed,
  Internal,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace clutterforge
