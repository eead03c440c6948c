#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

// Estimation of influence parameters from observed (or simulated) trials.
namespace odl::estimate {

struct AveragedMessage {
  double mean = 0.0;
};
struct MessagePair {
  double m = 0.0;  // the manipulated source
  double n = 0.0;  // the fixed reference source
};

struct TrialRecord {
  std::string subject;
  double a_initial = 0.0;
  std::variant<AveragedMessage, MessagePair> message;
  double a_updated = 0.0;
};

// (a_updated - a_initial) / (mean - a_initial); deliberately unbounded.
// Throws Error{DegenerateDenominator} when |mean - a_initial| <= tol_div and
// Error{InvalidParams} for a pair-message record.
double estimate_alpha(const TrialRecord& record, double tol_div = 1e-9);
double estimate_alpha(double a_initial, double mean_message, double a_updated,
                      double tol_div = 1e-9);

enum class Responder { Keeper, Adopter, Compromiser, Overreactor, Repulsed };
std::string_view responder_name(Responder r) noexcept;

// Bands of half-width tol around 0 and 1; tol must lie in (0, 0.5).
Responder classify_responder(double alpha_hat, double tol = 0.05);

// (a_final - a_n) / (a_m - a_n). Throws Error{IdenticalSources} if a_m == a_n.
double estimate_hew_weight(double a_final, double a_m, double a_n);

struct HewPoint {
  double distance = 0.0;
  double weight = 0.0;
};
struct HewFit {
  double alpha = 0.0;  // dead-band half width
  double beta = 1.0;   // decay scale
  double rss = 0.0;
};

double hew_rss(std::span<const HewPoint> points, double alpha, double beta) noexcept;

// Least-squares fit of the evidence-weight curve: grid search over
// alpha in [0, d_max], beta in (0, 2 d_max], then alternating golden-section
// refinement per axis. Needs >= 4 points and >= 2 distinct distances.
HewFit fit_hew_curve(std::span<const HewPoint> points);

// Sample Pearson correlation. Throws Error{InsufficientData} for n < 3,
// Error{LengthMismatch}, Error{ZeroVariance}.
double correlation(std::span<const double> xs, std::span<const double> ys);

struct ImportOptions {
  // Replace every value x by log(x / truth) before returning.
  bool log_normalize = false;
  double truth = 1.0;
};

// Accepts `subject,a_initial,m_avg,a_updated` or
// `subject,a_initial,m_m,m_n,a_final` (header row required).
std::vector<TrialRecord> read_trials_csv(std::istream& in, const ImportOptions& options = {});

}  // namespace odl::estimate
