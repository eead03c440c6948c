#include "odl/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "odl/error.hpp"
#include "odl/estimate.hpp"
#include "odl/forces.hpp"

namespace odl::models {

namespace {

void require_single_sender(const MessageBundle& bundle, const char* model) {
  if (bundle.size() != 1) {
    throw Error(Errc::MultipleSenders, std::string(model) + " takes exactly one sender, got " +
                                           std::to_string(bundle.size()));
  }
}

}  // namespace

double degroot_update(double a_i, const MessageBundle& bundle, double alpha,
                      std::span<const double> weights) {
  if (weights.size() != bundle.values.size()) {
    throw Error(Errc::WeightMismatch, std::to_string(bundle.values.size()) + " senders but " +
                                          std::to_string(weights.size()) + " weights");
  }
  double total = 0.0;
  double acc = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] < 0.0 || weights[j] > 1.0) {
      throw Error(Errc::WeightMismatch, "weight outside [0, 1]: " + std::to_string(weights[j]));
    }
    total += weights[j];
    acc += weights[j] * forces::assimilation(a_i, bundle.values[j]);
  }
  if (!weights.empty() && std::abs(total - 1.0) > 1e-9) {
    throw Error(Errc::WeightMismatch, "weights sum to " + std::to_string(total));
  }
  return alpha * acc;
}

double hunter_update(const MessageBundle& bundle, double alpha) noexcept {
  double acc = 0.0;
  for (double m : bundle.values) acc += forces::reinforcement(m);
  return alpha * acc;
}

double deffuant_bc_update(double a_i, const MessageBundle& bundle, double alpha, double epsilon) {
  require_single_sender(bundle, "bounded confidence (pairwise)");
  const double m = bundle.values.front();
  return alpha * forces::similarity(a_i, m, forces::Step{epsilon}) * forces::assimilation(a_i, m);
}

double hk_update(double a_i, const MessageBundle& bundle, double epsilon) noexcept {
  std::size_t in_bound = 0;
  double acc = 0.0;
  for (double m : bundle.values) {
    const double sim = forces::similarity(a_i, m, forces::Step{epsilon});
    if (sim > 0.0) {
      ++in_bound;
      acc += sim * forces::assimilation(a_i, m);
    }
  }
  if (in_bound == 0) return 0.0;
  const double n = static_cast<double>(in_bound);
  return (n / (n + 1.0)) * (acc / n);
}

RaChange ra_update(double a_i, double u_i, double a_j, double u_j, double alpha,
                   bool update_uncertainty) {
  if (!(u_i > 0.0)) {
    throw Error(Errc::InvalidUncertainty,
                "receiver uncertainty must be positive, got " + std::to_string(u_i));
  }
  const double sim = forces::similarity(a_i, a_j, forces::RelativeAgreement{u_i, u_j});
  RaChange change;
  change.attitude = alpha * sim * forces::assimilation(a_i, a_j);
  if (update_uncertainty) change.uncertainty = alpha * sim * (u_j - u_i);
  return change;
}

double sj_update(double a_i, double m_j, double alpha, double accept, double reject) {
  if (!(accept > 0.0) || accept > reject) {
    throw Error(Errc::LatitudeOrder, "need 0 < accept <= reject, got accept=" +
                                         std::to_string(accept) +
                                         " reject=" + std::to_string(reject));
  }
  const double pull =
      forces::similarity(a_i, m_j, forces::Step{accept}) * forces::assimilation(a_i, m_j);
  return alpha * (pull + forces::repulsion(a_i, m_j, reject));
}

double lorenz_update(double a_i, double m_j, const LorenzParams& p) {
  const double pol = forces::polarity(a_i, p.bound);
  const double sim = forces::similarity(a_i, m_j, forces::RationalPower{p.lambda, p.k});
  return forces::combine_lorenz(forces::assimilation(a_i, m_j), forces::reinforcement(m_j), sim,
                                pol, p.credibility, p.rho, p.alpha);
}

Belief madsen_bayes_update(Belief self, double mu_j, double beta, double obs_variance) {
  if (!(self.sigma > 0.0)) {
    throw Error(Errc::NonPositiveVariance, "belief sigma must be positive");
  }
  if (!(obs_variance > 0.0)) {
    throw Error(Errc::NonPositiveVariance, "observation variance must be positive");
  }
  if (std::abs(mu_j - self.mu) > beta * self.sigma) return self;
  const double prior_var = self.sigma * self.sigma;
  const double denom = prior_var + obs_variance;
  Belief post;
  post.mu = (obs_variance * self.mu + prior_var * mu_j) / denom;
  post.sigma = std::sqrt(prior_var * obs_variance / denom);
  return post;
}

std::vector<double> baumann_step(std::span<const double> attitudes,
                                 const std::vector<std::vector<std::size_t>>& contacts,
                                 double alpha, double c, double dt, Integrator integrator) {
  const std::size_t n = attitudes.size();
  if (contacts.size() != n) {
    throw Error(Errc::InvalidParams, "contact lists must cover every agent");
  }
  auto rhs = [&](std::span<const double> a, std::vector<double>& out) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      double social = 0.0;
      for (std::size_t j : contacts[i]) social += forces::reinforcement(a[j], forces::Tanh{c});
      out[i] = -a[i] + alpha * social;
    }
  };

  std::vector<double> next(attitudes.begin(), attitudes.end());
  std::vector<double> k1;
  rhs(attitudes, k1);
  if (integrator == Integrator::Euler) {
    for (std::size_t i = 0; i < n; ++i) next[i] += dt * k1[i];
    return next;
  }

  std::vector<double> tmp(n), k2, k3, k4;
  for (std::size_t i = 0; i < n; ++i) tmp[i] = attitudes[i] + 0.5 * dt * k1[i];
  rhs(tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = attitudes[i] + 0.5 * dt * k2[i];
  rhs(tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = attitudes[i] + dt * k3[i];
  rhs(tmp, k4);
  for (std::size_t i = 0; i < n; ++i) {
    next[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return next;
}

namespace {

// 0-based ranks, ties broken by index so the result is deterministic.
std::vector<double> ranks_of(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t r = 0; r < order.size(); ++r) ranks[order[r]] = static_cast<double>(r);
  return ranks;
}

// Hands out the sorted `grid` values in the order given by `score`.
std::vector<double> assign_by_score(std::span<const double> score, std::span<const double> grid) {
  std::vector<std::size_t> order(score.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
  std::vector<double> out(score.size());
  for (std::size_t r = 0; r < order.size(); ++r) out[order[r]] = grid[r];
  return out;
}

}  // namespace

std::vector<double> becker17_alpha_assignment(std::span<const double> errors, double r_target,
                                              Rng& rng) {
  const std::size_t n = errors.size();
  if (n < 3) throw Error(Errc::InvalidParams, "need at least 3 agents");
  if (r_target < -1.0 || r_target > 1.0) {
    throw Error(Errc::InvalidParams, "r_target outside [-1, 1]");
  }
  const auto [lo_it, hi_it] = std::minmax_element(errors.begin(), errors.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) throw Error(Errc::DegenerateErrors, "all errors identical");

  // The grid is the errors themselves mapped affinely onto [0, 1], so a pure
  // rank match has Pearson correlation exactly +1 (or -1 when reversed).
  std::vector<double> grid(errors.begin(), errors.end());
  std::sort(grid.begin(), grid.end());
  for (double& g : grid) g = (g - lo) / (hi - lo);

  const std::vector<double> error_rank = ranks_of(errors);
  std::vector<double> random_rank(n);
  {
    std::vector<double> perm(n);
    std::iota(perm.begin(), perm.end(), 0.0);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.index(i + 1)]);
    random_rank = std::move(perm);
  }

  // Mixing weight w in [-1, 1]: score = w * error_rank + (1 - |w|) * random_rank.
  // w = +1 is the pure rank match, w = -1 its reverse, w = 0 pure noise. Scan
  // w and keep the assignment whose realised correlation is closest.
  constexpr int kSteps = 400;
  std::vector<double> best;
  double best_gap = std::numeric_limits<double>::infinity();
  std::vector<double> score(n);
  for (int s = 0; s <= kSteps; ++s) {
    const double w = -1.0 + 2.0 * s / kSteps;
    for (std::size_t i = 0; i < n; ++i) {
      score[i] = w * error_rank[i] + (1.0 - std::abs(w)) * random_rank[i];
    }
    auto candidate = assign_by_score(score, grid);
    double r = 0.0;
    try {
      r = estimate::correlation(candidate, errors);
    } catch (const Error&) {
      continue;
    }
    const double gap = std::abs(r - r_target);
    if (gap < best_gap) {
      best_gap = gap;
      best = std::move(candidate);
    }
  }
  return best;
}

double becker19_alpha(double a_i, int b_i, double e_i) noexcept {
  return 1.0 / (1.0 + std::exp(-(a_i * b_i + e_i)));
}

double becker_averaged_update(double a_i, double mean_message, double alpha) noexcept {
  return alpha * forces::assimilation(a_i, mean_message);
}

double becker_averaged_update(double a_i, const MessageBundle& bundle, double alpha) {
  const auto* avg = std::get_if<Averaged>(&bundle.presentation);
  if (avg == nullptr) {
    throw Error(Errc::IndividualBundle, "averaged-message update needs an averaged bundle");
  }
  return becker_averaged_update(a_i, avg->mean, alpha);
}

double hew_weight(double distance, double dead_band, double decay) noexcept {
  const double excess = std::max(distance - dead_band, 0.0);
  if (std::isinf(excess)) return 0.0;
  return 1.0 - excess / (excess + decay);
}

HewResult hew_update(double a_i, double m_m, double m_n, double dead_band, double decay) {
  if (!(decay > 0.0)) throw Error(Errc::InvalidParams, "decay must be positive");
  const double w_m = hew_weight(std::abs(m_m - a_i), dead_band, decay);
  const double w_n = hew_weight(std::abs(m_n - a_i), dead_band, decay);
  const double total = w_m + w_n;
  if (!(total > 0.0)) return {a_i, true};
  return {(w_m * m_m + w_n * m_n) / total, false};
}

HewResult hew_update(double a_i, const MessageBundle& bundle, double dead_band, double decay) {
  if (bundle.size() != 2) {
    throw Error(Errc::SenderCountNotTwo,
                "evidence weighting needs two senders, got " + std::to_string(bundle.size()));
  }
  return hew_update(a_i, bundle.values[0], bundle.values[1], dead_band, decay);
}

}  // namespace odl::models
