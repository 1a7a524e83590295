#include "error.hpp"

namespace clutterforge {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::Ok: return "Ok";
    case Errc::NotPrimePower: return "NotPrimePower";
    case Errc::Unsupported: return "Unsupported";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::TooLarge: return "TooLarge";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::BadIndex: return "BadIndex";
    case Errc::NotConnectedComponent: return "NotConnectedComponent";
    case Errc::OverlapError: return "OverlapError";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::WrongShape: return "WrongShape";
    case Errc::WrongField: return "WrongField";
    case Errc::WrongFieldClass: return "WrongFieldClass";
    case Errc::NoSeriesPair: return "NoSeriesPair";
    case Errc::ParseError: return "ParseError";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace clutterforge
