#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclelab {

enum class ErrorKind {
  NotPrime,
  NonIntegralE0,
  ZetaRamification,
  NonUnitInverse,
  NonIntegral,
  PrecisionExhausted,
  BudgetExceeded,
  ConstantTermPresent,
  NonIntegralSolution,
  NotASubgroup,
  InsufficientPrecision,
  NonIntegralT,
  NotHeightOne,
  OutOfRange,
  PreconditionViolated,
  CountMismatch,
  NotClosed,
  ChainInvariant,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `contract()` names the operation whose
/// contract was violated so frontends can render it next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string contract, const std::string& what)
      : std::runtime_error(what), kind_(kind), contract_(std::move(contract)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& contract() const noexcept { return contract_; }

 private:
  ErrorKind kind_;
  std::string contract_;
};

}  // namespace cyclelab
