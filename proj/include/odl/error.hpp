#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace odl {

enum class Errc {
  EmptyPopulation,
  InvariantViolation,
  InvalidUncertainty,
  OutOfSpace,
  WeightMismatch,
  MultipleSenders,
  LatitudeOrder,
  NonPositiveVariance,
  DegenerateErrors,
  SenderCountNotTwo,
  IndividualBundle,
  TooFewAgents,
  InvalidParams,
  EmptyInput,
  LengthMismatch,
  DegenerateDenominator,
  IdenticalSources,
  InsufficientData,
  ZeroVariance,
  Config,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  Errc code() const noexcept { return code_; }
  // The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace odl
