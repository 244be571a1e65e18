#include "cyclelab/error.hpp"

namespace cyclelab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NonIntegralE0: return "NonIntegralE0";
    case ErrorKind::ZetaRamification: return "ZetaRamification";
    case ErrorKind::NonUnitInverse: return "NonUnitInverse";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ConstantTermPresent: return "ConstantTermPresent";
    case ErrorKind::NonIntegralSolution: return "NonIntegralSolution";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::NonIntegralT: return "NonIntegralT";
    case ErrorKind::NotHeightOne: return "NotHeightOne";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::CountMismatch: return "CountMismatch";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::ChainInvariant: return "ChainInvariant";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace cyclelab
