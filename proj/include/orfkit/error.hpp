#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orfkit {

enum class ErrorKind {
  PoleProximity,
  DivisionByZeroBlaschke,
  KernelSingularity,
  DomainError,
  PoleMismatch,
  NonPositiveWeight,
  NegativeDensity,
  RankDeficiency,
  ParameterOutOfDisk,
  FitResidualTooLarge,
  InterpolationSingular,
  ZeroOffCircle,
  ZeroCollision,
  DenominatorVanishes,
  DivisionRemainderTooLarge,
  ConditionUnchecked,
  ConditionViolated,
  InvariantViolated,
};

std::string_view to_string(ErrorKind kind);

class OrfError : public std::runtime_error {
 public:
  OrfError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace orfkit
