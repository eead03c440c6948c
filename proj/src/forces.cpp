#include "odl/forces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "odl/error.hpp"
#include "overloaded.hpp"

namespace odl::forces {

using detail::overloaded;

double assimilation(double a, double m) noexcept { return m - a; }

double reinforcement(double m, const ReinforcementKind& kind) noexcept {
  return std::visit(overloaded{[m](const Linear&) { return m; },
                               [m](const Tanh& t) { return std::tanh(t.controversialness * m); }},
                    kind);
}

double segment_overlap(double a, double u_self, double m, double u_other) noexcept {
  return std::min(a + u_self, m + u_other) - std::max(a - u_self, m - u_other);
}

double similarity(double a, double m, const SimilarityKind& kind) {
  return std::visit(
      overloaded{
          [&](const Step& s) { return std::abs(m - a) < s.radius ? 1.0 : 0.0; },
          [&](const RationalPower& p) {
            const double lk = std::pow(p.lambda, p.k);
            return lk / (lk + std::pow(std::abs(m - a), p.k));
          },
          [&](const RelativeAgreement& ra) {
            if (!(ra.u_other > 0.0)) {
              throw Error(Errc::InvalidUncertainty,
                          "sender uncertainty must be positive, got " + std::to_string(ra.u_other));
            }
            const double ratio = segment_overlap(a, ra.u_self, m, ra.u_other) / ra.u_other;
            return ratio > 1.0 ? ratio - 1.0 : 0.0;
          },
      },
      kind);
}

double repulsion(double a, double m, double reject_latitude) noexcept {
  return std::abs(m - a) > reject_latitude ? -(m - a) : 0.0;
}

double polarity(double a, double bound) {
  if (std::abs(a) > bound) {
    throw Error(Errc::OutOfSpace,
                "attitude " + std::to_string(a) + " outside [-" + std::to_string(bound) + ", " +
                    std::to_string(bound) + "]");
  }
  const double m2 = bound * bound;
  return (m2 - a * a) / m2;
}

double combine_lorenz(double asm_term, double ref_term, double sim, double pol, double credibility,
                      double rho, double alpha) noexcept {
  return alpha * credibility * pol * sim * (rho * asm_term + (1.0 - rho) * ref_term);
}

}  // namespace odl::forces
