#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "odl/topology.hpp"

namespace odl {

// Either [-M, +M] or the whole real line.
class AttitudeSpace {
 public:
  static AttitudeSpace bounded(double m);
  static AttitudeSpace unbounded() noexcept { return AttitudeSpace{}; }

  bool is_bounded() const noexcept { return bound_.has_value(); }
  // M; only meaningful when bounded.
  double bound() const;
  double clamp(double a) const noexcept;
  bool contains(double a) const noexcept;

  friend bool operator==(const AttitudeSpace&, const AttitudeSpace&) = default;

 private:
  std::optional<double> bound_;
};

// Per-agent model parameters. Only the fields the active model reads matter.
struct AgentParams {
  double confidence = 0.0;       // bounded-confidence radius
  double accept_latitude = 0.0;  // social judgement, inner threshold
  double reject_latitude = 0.0;  // social judgement, outer threshold
  double uncertainty = 0.0;      // relative agreement segment half-width
  int partisan = 1;              // partisan sign, -1 or +1
  double noise = 0.0;            // fixed per-agent error term for partisan influence
  double activity = 1.0;         // activation probability per step
  double sigma = 1.0;            // Bayesian belief standard deviation

  friend bool operator==(const AgentParams&, const AgentParams&) = default;
};

// For the Bayesian model `attitude` is the belief mean.
struct AgentState {
  std::size_t id = 0;
  double attitude = 0.0;
  double alpha = 0.0;
  AgentParams params;

  friend bool operator==(const AgentState&, const AgentState&) = default;
};

struct Individual {};
struct Averaged {
  double mean = 0.0;
  std::size_t count = 0;
};

// Messages delivered to one receiver in one step.
struct MessageBundle {
  std::vector<std::size_t> senders;
  std::vector<double> values;
  std::variant<Individual, Averaged> presentation{Individual{}};

  std::size_t size() const noexcept { return senders.size(); }
  bool averaged() const noexcept { return std::holds_alternative<Averaged>(presentation); }
};

// Identity message function: every sender conveys its attitude. Throws
// Error{InvariantViolation} if `receiver` appears among `senders`.
MessageBundle individual_bundle(std::span<const double> attitudes, std::size_t receiver,
                                std::span<const std::size_t> senders);
// Same senders, presented only as their arithmetic mean.
MessageBundle averaged_bundle(std::span<const double> attitudes, std::size_t receiver,
                              std::span<const std::size_t> senders);

struct Population {
  std::vector<AgentState> agents;
  AttitudeSpace space = AttitudeSpace::unbounded();
  std::optional<Topology> topology;

  std::size_t size() const noexcept { return agents.size(); }
  bool empty() const noexcept { return agents.empty(); }
  std::vector<double> attitudes() const;
};

}  // namespace odl
