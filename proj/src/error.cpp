#include "orfkit/error.hpp"

namespace orfkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PoleProximity: return "PoleProximity";
    case ErrorKind::DivisionByZeroBlaschke: return "DivisionByZeroBlaschke";
    case ErrorKind::KernelSingularity: return "KernelSingularity";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::PoleMismatch: return "PoleMismatch";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::NegativeDensity: return "NegativeDensity";
    case ErrorKind::RankDeficiency: return "RankDeficiency";
    case ErrorKind::ParameterOutOfDisk: return "ParameterOutOfDisk";
    case ErrorKind::FitResidualTooLarge: return "FitResidualTooLarge";
    case ErrorKind::InterpolationSingular: return "InterpolationSingular";
    case ErrorKind::ZeroOffCircle: return "ZeroOffCircle";
    case ErrorKind::ZeroCollision: return "ZeroCollision";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::DivisionRemainderTooLarge: return "DivisionRemainderTooLarge";
    case ErrorKind::ConditionUnchecked: return "ConditionUnchecked";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::InvariantViolated: return "InvariantViolated";
  }
  return "Unknown";
}

}  // namespace orfkit
