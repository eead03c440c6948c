#pragma once

#include <variant>

// The four force components of a social-influence update and the modulators
// that scale them. Everything here is a pure scalar function.
namespace odl::forces {

// Pull toward the message: m - a.
double assimilation(double a, double m) noexcept;

struct Linear {};
struct Tanh {
  double controversialness = 1.0;  // c > 0
};
using ReinforcementKind = std::variant<Linear, Tanh>;

// Push in the direction of the message's own sign, independent of a.
double reinforcement(double m, const ReinforcementKind& kind = Linear{}) noexcept;

// 1 inside the open confidence interval |m - a| < radius, else 0.
struct Step {
  double radius = 0.0;
};
// lambda^k / (lambda^k + |m - a|^k).
struct RationalPower {
  double lambda = 1.0;
  double k = 1.0;
};
// Segment overlap of [a - u_self, a + u_self] and [m - u_other, m + u_other],
// mapped to max(h / u_other - 1, 0).
struct RelativeAgreement {
  double u_self = 0.0;
  double u_other = 0.0;
};
using SimilarityKind = std::variant<Step, RationalPower, RelativeAgreement>;

// Non-negative weight, non-increasing in |m - a|. Throws
// Error{InvalidUncertainty} for RelativeAgreement with u_other <= 0.
double similarity(double a, double m, const SimilarityKind& kind);

// Overlap length of the two relative-agreement segments (negative when the
// segments are disjoint).
double segment_overlap(double a, double u_self, double m, double u_other) noexcept;

// -(m - a) beyond the rejection latitude, else 0.
double repulsion(double a, double m, double reject_latitude) noexcept;

// (M^2 - a^2) / M^2. Throws Error{OutOfSpace} if |a| > M.
double polarity(double a, double bound);

// alpha * s * pol * sim * (rho * asm + (1 - rho) * ref)
double combine_lorenz(double asm_term, double ref_term, double sim, double pol, double credibility,
                      double rho, double alpha) noexcept;

}  // namespace odl::forces
