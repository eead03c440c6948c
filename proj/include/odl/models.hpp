#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "odl/core.hpp"
#include "odl/model_spec.hpp"
#include "odl/rng.hpp"

// Attitude-update rules. Each returns the change for one focal agent given
// the messages it received; the engine applies and clamps.
namespace odl::models {

// alpha * sum_j w_j (m_j - a_i). `weights` is aligned with bundle.values
// and must sum to 1.
double degroot_update(double a_i, const MessageBundle& bundle, double alpha,
                      std::span<const double> weights);

// alpha * sum_j m_j
double hunter_update(const MessageBundle& bundle, double alpha) noexcept;

// Single sender; alpha * (m - a) inside the open confidence interval.
double deffuant_bc_update(double a_i, const MessageBundle& bundle, double alpha, double epsilon);

// Averages self with every sender strictly within epsilon.
double hk_update(double a_i, const MessageBundle& bundle, double epsilon) noexcept;

struct RaChange {
  double attitude = 0.0;
  double uncertainty = 0.0;
};
// Relative agreement. The uncertainty change mirrors the attitude change
// (alpha * sim * (u_j - u_i)); pass update_uncertainty = false to freeze u.
RaChange ra_update(double a_i, double u_i, double a_j, double u_j, double alpha,
                   bool update_uncertainty = true);

// Assimilate inside `accept`, repel beyond `reject`, neutral between.
double sj_update(double a_i, double m_j, double alpha, double accept, double reject);

struct LorenzParams {
  double alpha = 1.0;
  double credibility = 1.0;
  double lambda = 0.5;
  double k = 2.0;
  double rho = 1.0;
  double bound = 1.0;
};
double lorenz_update(double a_i, double m_j, const LorenzParams& p);

struct Belief {
  double mu = 0.0;
  double sigma = 1.0;
};
// Conjugate normal update against a point message with likelihood variance
// obs_variance. Messages further than beta * sigma from mu are ignored and
// the belief is returned unchanged.
Belief madsen_bayes_update(Belief self, double mu_j, double beta, double obs_variance);

// da_i/dt = -a_i + alpha * sum_{j in contacts[i]} tanh(c * a_j), advanced by
// one step of size dt with contacts held fixed.
std::vector<double> baumann_step(std::span<const double> attitudes,
                                 const std::vector<std::vector<std::size_t>>& contacts,
                                 double alpha, double c, double dt,
                                 Integrator integrator = Integrator::Euler);

// Influence strengths in [0, 1] whose Pearson correlation with `errors` is
// as close to r_target as the construction allows.
std::vector<double> becker17_alpha_assignment(std::span<const double> errors, double r_target,
                                              Rng& rng);

// sigmoid(a * b + e)
double becker19_alpha(double a_i, int b_i, double e_i) noexcept;

// alpha * (mean - a_i). The bundle overload requires averaged presentation.
double becker_averaged_update(double a_i, double mean_message, double alpha) noexcept;
double becker_averaged_update(double a_i, const MessageBundle& bundle, double alpha);

// 1 - x / (x + decay) with x = max(distance - dead_band, 0).
double hew_weight(double distance, double dead_band, double decay) noexcept;

struct HewResult {
  double attitude = 0.0;
  bool both_weights_zero = false;
};
// New attitude after two simultaneous messages; the normalised evidence
// weights form a convex combination and the prior attitude gets no weight.
HewResult hew_update(double a_i, double m_m, double m_n, double dead_band, double decay);
HewResult hew_update(double a_i, const MessageBundle& bundle, double dead_band, double decay);

}  // namespace odl::models
