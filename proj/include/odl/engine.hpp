#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "odl/core.hpp"
#include "odl/model_spec.hpp"
#include "odl/rng.hpp"

namespace odl {

// Uniform over [lo, hi]; defaults to the whole bounded space, or [-1, 1]
// when the space is unbounded.
struct UniformInit {
  std::optional<double> lo;
  std::optional<double> hi;
};
// Clamped to the space when it is bounded.
struct NormalInit {
  double mean = 0.0;
  double sd = 1.0;
};
struct ListInit {
  std::vector<double> values;
};
using InitialDistribution = std::variant<UniformInit, NormalInit, ListInit>;

// Draws initial attitudes and fills every per-agent parameter the model
// needs (confidence radius, latitudes, uncertainty, activity, partisan sign
// and noise, Bayesian sigma, assigned influence strengths).
Population make_population(const ModelSpec& spec, std::size_t n, const InitialDistribution& init,
                           Rng& rng, std::optional<Topology> topology = std::nullopt);

// Throws Error{EmptyPopulation} or Error{InvariantViolation} naming the agent.
void check_population(const Population& population, const ModelSpec& spec);

// One application of the update rule under the spec's scheduler.
void step(Population& population, const ModelSpec& spec, Rng& rng);

struct Trajectory {
  std::vector<std::size_t> steps;              // step index of each recorded row
  std::vector<std::vector<double>> attitudes;  // rows x agents
  std::uint64_t seed = 0;
  ModelSpec spec;
  Population final_state;
};

struct SimulateOptions {
  // Record every k-th step; step 0 and the final step are always recorded.
  std::size_t record_every = 1;
};

// Deterministic in (spec, initial, steps, seed). Errors from `step` are
// rethrown with the failing step index.
Trajectory simulate(const ModelSpec& spec, const Population& initial, std::size_t steps,
                    std::uint64_t seed, SimulateOptions options = {});

// Independent stream seed for a given purpose/replica.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

}  // namespace odl
