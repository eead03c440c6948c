#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "odl/rng.hpp"
#include "odl/topology.hpp"

// Selection functions: who influences the focal agent this step. None of
// them ever returns the focal agent itself.
namespace odl::selection {

// Uniform over all agents except `focal`. Throws Error{TooFewAgents} if n < 2.
std::size_t select_random_single(std::size_t n, std::size_t focal, Rng& rng);

// Uniform over {j != focal : |a_j - a_focal| < epsilon}; nullopt if empty.
std::optional<std::size_t> select_random_in_bound(std::span<const double> attitudes,
                                                  std::size_t focal, double epsilon, Rng& rng);

// Two distinct agents, both different from `focal`. Needs n >= 3.
std::array<std::size_t, 2> select_random_pair(std::size_t n, std::size_t focal, Rng& rng);

std::vector<std::size_t> select_neighbors(const Topology& topology, std::size_t focal);

std::vector<std::size_t> select_all_others(std::size_t n, std::size_t focal);

// Inverse-CDF draw from density proportional to act^-gamma on [act_min, 1].
double sample_activity(double gamma, double act_min, Rng& rng);

struct HomophilyParams {
  double beta = 3.0;      // homophily exponent
  double delta = 1e-3;    // smoothing added to the distance
  std::size_t contacts = 10;
  // Probability that a drawn contact also listens back to the agent who
  // drew it. 0 keeps influence one-way (only the active agent moves).
  double reciprocity = 0.0;
};

// Partner weights (|a_focal - a_j| + delta)^-beta for j != focal, normalised.
// Entry `focal` is zero.
std::vector<double> homophily_weights(std::span<const double> attitudes, std::size_t focal,
                                      double beta, double delta);

// `contacts` distinct partners drawn without replacement from the homophily
// weights (all others if fewer are available).
std::vector<std::size_t> sample_homophily_partners(std::span<const double> attitudes,
                                                   std::size_t focal,
                                                   const HomophilyParams& params, Rng& rng);

// Each agent activates with probability activity[i]; activated agents draw
// partners. Entry i lists the agents whose attitudes reach agent i this step;
// with reciprocity > 0 a drawn partner may also list the agent who drew it.
std::vector<std::vector<std::size_t>> select_activity_homophily(
    std::span<const double> attitudes, std::span<const double> activity,
    const HomophilyParams& params, Rng& rng);

}  // namespace odl::selection
