#include "odl/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "odl/error.hpp"
#include "odl/models.hpp"
#include "odl/selection.hpp"
#include "overloaded.hpp"

namespace odl {

using detail::overloaded;

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  SplitMix64 sm(base ^ (0xd1b54a32d192ed03ULL * (stream + 1)));
  return sm.next();
}

namespace {

std::string agent_tag(std::size_t id) { return "agent " + std::to_string(id) + ": "; }

std::vector<double> draw_attitudes(const AttitudeSpace& space, std::size_t n,
                                   const InitialDistribution& init, Rng& rng) {
  std::vector<double> out;
  out.reserve(n);
  std::visit(overloaded{
                 [&](const UniformInit& u) {
                   const double m = space.is_bounded() ? space.bound() : 1.0;
                   const double lo = u.lo.value_or(-m);
                   const double hi = u.hi.value_or(m);
                   if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
                     throw Error(Errc::InvalidParams, "init: need finite lo <= hi");
                   }
                   for (std::size_t i = 0; i < n; ++i) out.push_back(space.clamp(rng.uniform(lo, hi)));
                 },
                 [&](const NormalInit& g) {
                   if (!(g.sd >= 0.0) || !std::isfinite(g.mean)) {
                     throw Error(Errc::InvalidParams, "init: need finite mean and sd >= 0");
                   }
                   for (std::size_t i = 0; i < n; ++i) {
                     out.push_back(space.clamp(rng.normal(g.mean, g.sd)));
                   }
                 },
                 [&](const ListInit& l) {
                   if (l.values.size() != n) {
                     throw Error(Errc::InvalidParams, "init: list has " +
                                                          std::to_string(l.values.size()) +
                                                          " values for " + std::to_string(n) +
                                                          " agents");
                   }
                   for (double v : l.values) {
                     if (!space.contains(v)) {
                       throw Error(Errc::OutOfSpace, "init: value " + std::to_string(v) +
                                                         " outside the attitude space");
                     }
                     out.push_back(v);
                   }
                 },
             },
             init);
  return out;
}

}  // namespace

Population make_population(const ModelSpec& spec, std::size_t n, const InitialDistribution& init,
                           Rng& rng, std::optional<Topology> topology) {
  validate(spec);
  if (n == 0) throw Error(Errc::EmptyPopulation, "population size must be positive");
  if (topology && topology->size() != n) {
    throw Error(Errc::InvalidParams, "topology has " + std::to_string(topology->size()) +
                                         " nodes for " + std::to_string(n) + " agents");
  }
  if (const auto* p = std::get_if<preset::DeGroot>(&spec.preset);
      p && !p->weights.empty() && p->weights.size() != n) {
    throw Error(Errc::WeightMismatch, "weight matrix does not match the population size");
  }

  Population pop;
  pop.space = spec.space;
  pop.topology = std::move(topology);
  const std::vector<double> a = draw_attitudes(spec.space, n, init, rng);
  pop.agents.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& agent = pop.agents[i];
    agent.id = i;
    agent.attitude = a[i];
    agent.alpha = spec.alpha;
  }

  std::visit(overloaded{
                 [&](const preset::DeffuantBC& p) {
                   for (auto& ag : pop.agents) ag.params.confidence = p.epsilon;
                 },
                 [&](const preset::HKBC& p) {
                   for (auto& ag : pop.agents) ag.params.confidence = p.epsilon;
                 },
                 [&](const preset::RelativeAgreement& p) {
                   for (auto& ag : pop.agents) ag.params.uncertainty = p.uncertainty;
                 },
                 [&](const preset::SocialJudgement& p) {
                   for (auto& ag : pop.agents) {
                     ag.params.accept_latitude = p.accept;
                     ag.params.reject_latitude = p.reject;
                   }
                 },
                 [&](const preset::MadsenBayes& p) {
                   for (auto& ag : pop.agents) ag.params.sigma = p.initial_sigma;
                 },
                 [&](const preset::Baumann& p) {
                   for (auto& ag : pop.agents) {
                     ag.params.activity = selection::sample_activity(p.gamma, p.act_min, rng);
                   }
                 },
                 [&](const preset::Becker17& p) {
                   std::vector<double> errors(n);
                   for (std::size_t i = 0; i < n; ++i) errors[i] = std::abs(a[i] - p.truth);
                   const auto alphas = models::becker17_alpha_assignment(errors, p.r_target, rng);
                   for (std::size_t i = 0; i < n; ++i) pop.agents[i].alpha = alphas[i];
                 },
                 [&](const preset::Becker19& p) {
                   const auto plus =
                       static_cast<std::size_t>(std::llround(p.partisan_share * static_cast<double>(n)));
                   std::vector<std::size_t> order(n);
                   std::iota(order.begin(), order.end(), 0);
                   for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.index(i + 1)]);
                   for (std::size_t k = 0; k < n; ++k) {
                     auto& ag = pop.agents[order[k]];
                     ag.params.partisan = k < plus ? 1 : -1;
                   }
                   for (auto& ag : pop.agents) {
                     ag.params.noise = p.noise > 0.0 ? rng.normal(0.0, p.noise) : 0.0;
                     ag.alpha = 0.0;
                   }
                 },
                 [](const auto&) {},
             },
             spec.preset);
  if (std::holds_alternative<preset::Becker19>(spec.preset)) {
    // Record the influence each agent starts with.
    const auto& p = std::get<preset::Becker19>(spec.preset);
    for (auto& ag : pop.agents) {
      const double s = models::becker19_alpha(ag.attitude, ag.params.partisan, ag.params.noise);
      ag.alpha = p.role == SigmoidRole::SelfWeight ? 1.0 - s : s;
    }
  }
  check_population(pop, spec);
  return pop;
}

void check_population(const Population& population, const ModelSpec& spec) {
  if (population.empty()) throw Error(Errc::EmptyPopulation, "population has no agents");
  const bool unit_alpha = alpha_is_unit_bounded(spec.preset);
  for (const auto& ag : population.agents) {
    auto fail = [&](const std::string& what) {
      throw Error(Errc::InvariantViolation, agent_tag(ag.id) + what);
    };
    if (!std::isfinite(ag.attitude)) fail("attitude is not finite");
    if (!population.space.contains(ag.attitude)) fail("attitude outside the attitude space");
    if (unit_alpha && !(ag.alpha >= 0.0 && ag.alpha <= 1.0)) fail("alpha outside [0, 1]");
    std::visit(overloaded{
                   [&](const preset::MadsenBayes&) {
                     if (!(ag.params.sigma > 0.0)) fail("belief sigma must be positive");
                   },
                   [&](const preset::RelativeAgreement&) {
                     if (!(ag.params.uncertainty > 0.0)) fail("uncertainty must be positive");
                   },
                   [&](const preset::SocialJudgement&) {
                     if (!(ag.params.accept_latitude > 0.0) ||
                         ag.params.accept_latitude > ag.params.reject_latitude) {
                       fail("latitudes must satisfy 0 < accept <= reject");
                     }
                   },
                   [&](const preset::Baumann&) {
                     if (!(ag.params.activity >= 0.0 && ag.params.activity <= 1.0)) {
                       fail("activity outside [0, 1]");
                     }
                   },
                   [&](const preset::Becker19&) {
                     if (ag.params.partisan != 1 && ag.params.partisan != -1) {
                       fail("partisan sign must be -1 or +1");
                     }
                   },
                   [](const auto&) {},
               },
               spec.preset);
  }
}

namespace {

std::vector<std::size_t> neighbors_or_all(const Population& pop, std::size_t i) {
  return pop.topology ? selection::select_neighbors(*pop.topology, i)
                      : selection::select_all_others(pop.size(), i);
}

std::optional<std::size_t> random_partner(const Population& pop, std::size_t i, Rng& rng) {
  if (pop.topology) {
    const auto& nb = pop.topology->neighbors(i);
    if (nb.empty()) return std::nullopt;
    return nb[rng.index(nb.size())];
  }
  return selection::select_random_single(pop.size(), i, rng);
}

// Computes the next state of agent i from the attitude snapshot `a`. The
// population is read only for per-agent parameters, which no update writes
// before the whole step has been computed.
AgentState next_state(const Population& pop, std::span<const double> a, std::size_t i,
                      const ModelSpec& spec, Rng& rng) {
  AgentState next = pop.agents[i];
  const AgentState& self = pop.agents[i];
  const double a_i = a[i];
  double delta = 0.0;

  std::visit(
      overloaded{
          [&](const preset::DeGroot& p) {
            std::vector<std::size_t> senders;
            std::vector<double> weights;
            if (!p.weights.empty()) {
              for (std::size_t j = 0; j < p.weights[i].size(); ++j) {
                if (p.weights[i][j] > 0.0) {
                  senders.push_back(j);
                  weights.push_back(p.weights[i][j]);
                }
              }
            } else {
              senders = neighbors_or_all(pop, i);
              weights.assign(senders.size(), 1.0 / static_cast<double>(senders.size()));
            }
            if (senders.empty()) return;
            delta = models::degroot_update(a_i, individual_bundle(a, i, senders), self.alpha,
                                           weights);
          },
          [&](const preset::Hunter&) {
            const auto senders = neighbors_or_all(pop, i);
            delta = models::hunter_update(individual_bundle(a, i, senders), self.alpha);
          },
          [&](const preset::DeffuantBC&) {
            std::optional<std::size_t> j;
            if (pop.topology) {
              j = random_partner(pop, i, rng);
            } else {
              j = selection::select_random_in_bound(a, i, self.params.confidence, rng);
            }
            if (!j) return;
            const std::size_t s[] = {*j};
            delta = models::deffuant_bc_update(a_i, individual_bundle(a, i, s), self.alpha,
                                               self.params.confidence);
          },
          [&](const preset::HKBC&) {
            const auto senders = neighbors_or_all(pop, i);
            delta = models::hk_update(a_i, individual_bundle(a, i, senders), self.params.confidence);
          },
          [&](const preset::RelativeAgreement& p) {
            const auto j = random_partner(pop, i, rng);
            if (!j) return;
            const auto change = models::ra_update(a_i, self.params.uncertainty, a[*j],
                                                  pop.agents[*j].params.uncertainty, self.alpha,
                                                  p.update_uncertainty);
            delta = change.attitude;
            next.params.uncertainty = self.params.uncertainty + change.uncertainty;
          },
          [&](const preset::SocialJudgement&) {
            const auto j = random_partner(pop, i, rng);
            if (!j) return;
            delta = models::sj_update(a_i, a[*j], self.alpha, self.params.accept_latitude,
                                      self.params.reject_latitude);
          },
          [&](const preset::Lorenz& p) {
            const auto j = random_partner(pop, i, rng);
            if (!j) return;
            delta = models::lorenz_update(
                a_i, a[*j], {self.alpha, p.credibility, p.lambda, p.k, p.rho, pop.space.bound()});
          },
          [&](const preset::MadsenBayes& p) {
            const auto j = random_partner(pop, i, rng);
            if (!j) return;
            const auto post =
                models::madsen_bayes_update({a_i, self.params.sigma}, a[*j], p.beta, p.obs_variance);
            delta = post.mu - a_i;
            next.params.sigma = post.sigma;
          },
          [&](const preset::Baumann&) {
            throw Error(Errc::InvalidParams, "the coupled ODE is stepped for the whole population");
          },
          [&](const preset::Becker17&) {
            const auto senders = neighbors_or_all(pop, i);
            if (senders.empty()) return;
            delta = models::becker_averaged_update(a_i, averaged_bundle(a, i, senders), self.alpha);
          },
          [&](const preset::Becker19& p) {
            const double s = models::becker19_alpha(a_i, self.params.partisan, self.params.noise);
            next.alpha = p.role == SigmoidRole::SelfWeight ? 1.0 - s : s;
            const auto senders = neighbors_or_all(pop, i);
            if (senders.empty()) return;
            delta = models::becker_averaged_update(a_i, averaged_bundle(a, i, senders), next.alpha);
          },
          [&](const preset::FrigoHEW& p) {
            std::array<std::size_t, 2> pair{};
            if (pop.topology) {
              const auto& nb = pop.topology->neighbors(i);
              if (nb.size() < 2) return;
              const std::size_t x = rng.index(nb.size());
              std::size_t y = rng.index(nb.size() - 1);
              if (y >= x) ++y;
              pair = {nb[x], nb[y]};
            } else {
              pair = selection::select_random_pair(pop.size(), i, rng);
            }
            const auto r = models::hew_update(a_i, individual_bundle(a, i, pair), p.dead_band,
                                              p.decay);
            delta = r.attitude - a_i;
          },
      },
      spec.preset);

  next.attitude = pop.space.clamp(a_i + delta);
  return next;
}

void step_baumann(Population& pop, const ModelSpec& spec, const preset::Baumann& p, Rng& rng) {
  const std::vector<double> a = pop.attitudes();
  std::vector<double> activity(pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) activity[i] = pop.agents[i].params.activity;
  const auto contacts = selection::select_activity_homophily(
      a, activity, {p.homophily, p.delta, p.contacts, p.reciprocity}, rng);
  const auto next = models::baumann_step(a, contacts, spec.alpha, p.controversialness, p.dt,
                                         p.integrator);
  for (std::size_t i = 0; i < pop.size(); ++i) {
    pop.agents[i].attitude = pop.space.clamp(next[i]);
  }
}

}  // namespace

void step(Population& population, const ModelSpec& spec, Rng& rng) {
  check_population(population, spec);
  if (const auto* p = std::get_if<preset::Baumann>(&spec.preset)) {
    step_baumann(population, spec, *p, rng);
  } else if (spec.scheduler == Scheduler::Synchronous) {
    const std::vector<double> snapshot = population.attitudes();
    std::vector<AgentState> next;
    next.reserve(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) {
      next.push_back(next_state(population, snapshot, i, spec, rng));
    }
    population.agents = std::move(next);
  } else {
    const std::size_t i = rng.index(population.size());
    const std::vector<double> current = population.attitudes();
    population.agents[i] = next_state(population, current, i, spec, rng);
  }
}

Trajectory simulate(const ModelSpec& spec, const Population& initial, std::size_t steps,
                    std::uint64_t seed, SimulateOptions options) {
  validate(spec);
  check_population(initial, spec);
  const std::size_t every = std::max<std::size_t>(options.record_every, 1);

  Trajectory traj;
  traj.seed = seed;
  traj.spec = spec;
  traj.final_state = initial;
  traj.steps.push_back(0);
  traj.attitudes.push_back(initial.attitudes());

  Rng rng(seed);
  Population& pop = traj.final_state;
  for (std::size_t k = 1; k <= steps; ++k) {
    try {
      step(pop, spec, rng);
    } catch (const Error& e) {
      throw Error(e.code(), "step " + std::to_string(k) + ": " + e.detail());
    }
    if (k % every == 0 || k == steps) {
      traj.steps.push_back(k);
      traj.attitudes.push_back(pop.attitudes());
    }
  }
  return traj;
}

}  // namespace odl
