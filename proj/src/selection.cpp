#include "odl/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "odl/error.hpp"

namespace odl::selection {

std::size_t select_random_single(std::size_t n, std::size_t focal, Rng& rng) {
  if (n < 2) throw Error(Errc::TooFewAgents, "random partner needs at least 2 agents");
  const std::size_t j = rng.index(n - 1);
  return j >= focal ? j + 1 : j;
}

std::optional<std::size_t> select_random_in_bound(std::span<const double> attitudes,
                                                  std::size_t focal, double epsilon, Rng& rng) {
  if (attitudes.size() < 2) {
    throw Error(Errc::TooFewAgents, "random partner needs at least 2 agents");
  }
  const double a = attitudes[focal];
  std::size_t count = 0;
  for (std::size_t j = 0; j < attitudes.size(); ++j) {
    if (j != focal && std::abs(attitudes[j] - a) < epsilon) ++count;
  }
  if (count == 0) return std::nullopt;
  std::size_t pick = rng.index(count);
  for (std::size_t j = 0; j < attitudes.size(); ++j) {
    if (j != focal && std::abs(attitudes[j] - a) < epsilon) {
      if (pick == 0) return j;
      --pick;
    }
  }
  return std::nullopt;  // unreachable
}

std::array<std::size_t, 2> select_random_pair(std::size_t n, std::size_t focal, Rng& rng) {
  if (n < 3) throw Error(Errc::TooFewAgents, "two partners need at least 3 agents");
  const std::size_t first = select_random_single(n, focal, rng);
  // Uniform over the n - 2 agents that are neither focal nor first.
  std::size_t second = rng.index(n - 2);
  const std::size_t lo = std::min(focal, first);
  const std::size_t hi = std::max(focal, first);
  if (second >= lo) ++second;
  if (second >= hi) ++second;
  return {first, second};
}

std::vector<std::size_t> select_neighbors(const Topology& topology, std::size_t focal) {
  return topology.neighbors(focal);
}

std::vector<std::size_t> select_all_others(std::size_t n, std::size_t focal) {
  std::vector<std::size_t> out;
  out.reserve(n > 0 ? n - 1 : 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (j != focal) out.push_back(j);
  }
  return out;
}

double sample_activity(double gamma, double act_min, Rng& rng) {
  if (!(act_min > 0.0 && act_min <= 1.0)) {
    throw Error(Errc::InvalidParams, "act_min must lie in (0, 1]");
  }
  const double u = rng.uniform();
  if (std::abs(gamma - 1.0) < 1e-12) {
    return act_min * std::pow(1.0 / act_min, u);
  }
  const double e = 1.0 - gamma;
  const double lo = std::pow(act_min, e);
  return std::pow(lo + u * (1.0 - lo), 1.0 / e);
}

std::vector<double> homophily_weights(std::span<const double> attitudes, std::size_t focal,
                                      double beta, double delta) {
  const std::size_t n = attitudes.size();
  std::vector<double> w(n, 0.0);
  double total = 0.0;
  const double a = attitudes[focal];
  for (std::size_t j = 0; j < n; ++j) {
    if (j == focal) continue;
    const double d = std::abs(a - attitudes[j]) + delta;
    w[j] = beta == 0.0 ? 1.0 : std::pow(d, -beta);
    total += w[j];
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    // Only reachable with delta = 0 and coincident attitudes: fall back to
    // uniform over the coincident agents.
    total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      w[j] = (j != focal && std::isinf(w[j])) ? 1.0 : 0.0;
      total += w[j];
    }
  }
  for (double& x : w) x /= total;
  return w;
}

std::vector<std::size_t> sample_homophily_partners(std::span<const double> attitudes,
                                                   std::size_t focal,
                                                   const HomophilyParams& params, Rng& rng) {
  const std::size_t n = attitudes.size();
  std::vector<std::size_t> picked;
  if (n < 2) return picked;
  if (params.contacts >= n - 1) return select_all_others(n, focal);

  std::vector<double> w = homophily_weights(attitudes, focal, params.beta, params.delta);
  double remaining = 1.0;
  picked.reserve(params.contacts);
  while (picked.size() < params.contacts) {
    double target = rng.uniform() * remaining;
    std::size_t chosen = n;
    std::size_t last_positive = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (w[j] <= 0.0) continue;
      last_positive = j;
      target -= w[j];
      if (target < 0.0) {
        chosen = j;
        break;
      }
    }
    if (chosen == n) chosen = last_positive;  // rounding at the tail
    if (chosen == n) break;
    picked.push_back(chosen);
    remaining -= w[chosen];
    w[chosen] = 0.0;
    if (!(remaining > 0.0)) {
      remaining = 0.0;
      for (double x : w) remaining += x;
      if (!(remaining > 0.0)) break;
    }
  }
  return picked;
}

std::vector<std::vector<std::size_t>> select_activity_homophily(
    std::span<const double> attitudes, std::span<const double> activity,
    const HomophilyParams& params, Rng& rng) {
  if (activity.size() != attitudes.size()) {
    throw Error(Errc::LengthMismatch, "one activity per agent required");
  }
  const std::size_t n = attitudes.size();
  std::vector<std::vector<std::size_t>> contacts(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform() < activity[i]) {
      contacts[i] = sample_homophily_partners(attitudes, i, params, rng);
    }
  }
  if (params.reciprocity > 0.0) {
    std::vector<std::vector<std::size_t>> back(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j : contacts[i]) {
        if (params.reciprocity >= 1.0 || rng.uniform() < params.reciprocity) back[j].push_back(i);
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i : back[j]) {
        if (std::find(contacts[j].begin(), contacts[j].end(), i) == contacts[j].end()) {
          contacts[j].push_back(i);
        }
      }
    }
  }
  return contacts;
}

}  // namespace odl::selection
