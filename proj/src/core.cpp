#include "odl/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "odl/error.hpp"

namespace odl {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyPopulation: return "EmptyPopulation";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::InvalidUncertainty: return "InvalidUncertainty";
    case Errc::OutOfSpace: return "OutOfSpace";
    case Errc::WeightMismatch: return "WeightMismatch";
    case Errc::MultipleSenders: return "MultipleSenders";
    case Errc::LatitudeOrder: return "LatitudeOrder";
    case Errc::NonPositiveVariance: return "NonPositiveVariance";
    case Errc::DegenerateErrors: return "DegenerateErrors";
    case Errc::SenderCountNotTwo: return "SenderCountNotTwo";
    case Errc::IndividualBundle: return "IndividualBundle";
    case Errc::TooFewAgents: return "TooFewAgents";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::IdenticalSources: return "IdenticalSources";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::ZeroVariance: return "ZeroVariance";
    case Errc::Config: return "Config";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

AttitudeSpace AttitudeSpace::bounded(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw Error(Errc::InvalidParams, "attitude bound must be positive and finite");
  }
  AttitudeSpace s;
  s.bound_ = m;
  return s;
}

double AttitudeSpace::bound() const {
  if (!bound_) throw Error(Errc::InvalidParams, "attitude space is unbounded");
  return *bound_;
}

double AttitudeSpace::clamp(double a) const noexcept {
  return bound_ ? std::clamp(a, -*bound_, *bound_) : a;
}

bool AttitudeSpace::contains(double a) const noexcept {
  return bound_ ? std::abs(a) <= *bound_ : std::isfinite(a);
}

namespace {

void check_senders(std::size_t n, std::size_t receiver, std::span<const std::size_t> senders) {
  for (std::size_t j : senders) {
    if (j == receiver) {
      throw Error(Errc::InvariantViolation,
                  "agent " + std::to_string(receiver) + " selected as its own sender");
    }
    if (j >= n) throw Error(Errc::InvariantViolation, "sender index out of range");
  }
}

}  // namespace

MessageBundle individual_bundle(std::span<const double> attitudes, std::size_t receiver,
                                std::span<const std::size_t> senders) {
  check_senders(attitudes.size(), receiver, senders);
  MessageBundle b;
  b.senders.assign(senders.begin(), senders.end());
  b.values.reserve(senders.size());
  for (std::size_t j : senders) b.values.push_back(attitudes[j]);
  return b;
}

MessageBundle averaged_bundle(std::span<const double> attitudes, std::size_t receiver,
                              std::span<const std::size_t> senders) {
  if (senders.empty()) {
    throw Error(Errc::InvalidParams, "averaged bundle needs at least one sender");
  }
  MessageBundle b = individual_bundle(attitudes, receiver, senders);
  double sum = 0.0;
  for (double v : b.values) sum += v;
  b.presentation = Averaged{sum / static_cast<double>(b.values.size()), b.values.size()};
  return b;
}

std::vector<double> Population::attitudes() const {
  std::vector<double> out;
  out.reserve(agents.size());
  for (const auto& a : agents) out.push_back(a.attitude);
  return out;
}

}  // namespace odl
