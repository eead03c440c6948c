#include "odl/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <string>

#include "odl/error.hpp"
#include "odl/models.hpp"

namespace odl::estimate {

double estimate_alpha(double a_initial, double mean_message, double a_updated, double tol_div) {
  const double denom = mean_message - a_initial;
  if (!(std::abs(denom) > tol_div)) {
    throw Error(Errc::DegenerateDenominator, "message mean equals initial attitude");
  }
  return (a_updated - a_initial) / denom;
}

double estimate_alpha(const TrialRecord& record, double tol_div) {
  const auto* avg = std::get_if<AveragedMessage>(&record.message);
  if (avg == nullptr) {
    throw Error(Errc::InvalidParams, "subject " + record.subject + ": record has a message pair");
  }
  return estimate_alpha(record.a_initial, avg->mean, record.a_updated, tol_div);
}

std::string_view responder_name(Responder r) noexcept {
  switch (r) {
    case Responder::Keeper: return "keeper";
    case Responder::Adopter: return "adopter";
    case Responder::Compromiser: return "compromiser";
    case Responder::Overreactor: return "overreactor";
    case Responder::Repulsed: return "repulsed";
  }
  return "unknown";
}

Responder classify_responder(double alpha_hat, double tol) {
  if (!(tol > 0.0 && tol < 0.5)) throw Error(Errc::InvalidParams, "tol must lie in (0, 0.5)");
  if (std::abs(alpha_hat) <= tol) return Responder::Keeper;
  if (std::abs(alpha_hat - 1.0) <= tol) return Responder::Adopter;
  if (alpha_hat > 1.0) return Responder::Overreactor;
  if (alpha_hat < 0.0) return Responder::Repulsed;
  return Responder::Compromiser;
}

double estimate_hew_weight(double a_final, double a_m, double a_n) {
  if (a_m == a_n) throw Error(Errc::IdenticalSources, "both sources share one attitude");
  return (a_final - a_n) / (a_m - a_n);
}

double hew_rss(std::span<const HewPoint> points, double alpha, double beta) noexcept {
  double rss = 0.0;
  for (const auto& p : points) {
    const double r = p.weight - models::hew_weight(p.distance, alpha, beta);
    rss += r * r;
  }
  return rss;
}

namespace {

// Minimises f on [lo, hi]; returns the best abscissa seen.
template <class F>
double golden_section(F&& f, double lo, double hi, int iters = 80) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iters && hi - lo > 1e-12 * (1.0 + std::abs(lo)); ++i) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

}  // namespace

HewFit fit_hew_curve(std::span<const HewPoint> points) {
  if (points.size() < 4) throw Error(Errc::InsufficientData, "need at least 4 points");
  double d_min = std::numeric_limits<double>::infinity();
  double d_max = -d_min;
  for (const auto& p : points) {
    if (!std::isfinite(p.distance) || !std::isfinite(p.weight) || p.distance < 0.0) {
      throw Error(Errc::InvalidParams, "points need finite weights and distances >= 0");
    }
    d_min = std::min(d_min, p.distance);
    d_max = std::max(d_max, p.distance);
  }
  if (!(d_max > d_min)) throw Error(Errc::InsufficientData, "need at least 2 distinct distances");

  constexpr int kGrid = 60;
  const double a_step = d_max / kGrid;
  const double b_step = 2.0 * d_max / kGrid;
  HewFit best{0.0, b_step, std::numeric_limits<double>::infinity()};
  for (int ia = 0; ia <= kGrid; ++ia) {
    for (int ib = 1; ib <= kGrid; ++ib) {
      const double a = ia * a_step;
      const double b = ib * b_step;
      const double rss = hew_rss(points, a, b);
      if (rss < best.rss) best = {a, b, rss};
    }
  }

  const double b_floor = b_step * 1e-6;
  for (int round = 0; round < 50; ++round) {
    const double before = best.rss;
    const double a = golden_section([&](double x) { return hew_rss(points, x, best.beta); },
                                    std::max(0.0, best.alpha - a_step),
                                    std::min(d_max, best.alpha + a_step));
    if (const double rss = hew_rss(points, a, best.beta); rss < best.rss) {
      best.alpha = a;
      best.rss = rss;
    }
    const double b = golden_section([&](double x) { return hew_rss(points, best.alpha, x); },
                                    std::max(b_floor, best.beta - b_step),
                                    std::min(2.0 * d_max, best.beta + b_step));
    if (const double rss = hew_rss(points, best.alpha, b); rss < best.rss) {
      best.beta = b;
      best.rss = rss;
    }
    if (before - best.rss <= 1e-15 * (1.0 + before)) break;
  }
  return best;
}

double correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(Errc::LengthMismatch, "xs and ys differ in length");
  const std::size_t n = xs.size();
  if (n < 3) throw Error(Errc::InsufficientData, "correlation needs at least 3 pairs");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw Error(Errc::ZeroVariance, "a series is constant");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ls(line);
  while (std::getline(ls, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, std::size_t lineno) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::Io, "line " + std::to_string(lineno) + ": not a number: '" + s + "'");
}

}  // namespace

std::vector<TrialRecord> read_trials_csv(std::istream& in, const ImportOptions& options) {
  if (options.log_normalize && !(options.truth > 0.0)) {
    throw Error(Errc::InvalidParams, "log normalisation needs a positive truth value");
  }
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      header = split_csv(line);
      break;
    }
  }
  const std::vector<std::string> averaged{"subject", "a_initial", "m_avg", "a_updated"};
  const std::vector<std::string> paired{"subject", "a_initial", "m_m", "m_n", "a_final"};
  if (header != averaged && header != paired) {
    throw Error(Errc::Io, "unrecognised header; expected 'subject,a_initial,m_avg,a_updated' or "
                          "'subject,a_initial,m_m,m_n,a_final'");
  }
  const bool is_pair = header == paired;

  auto normalize = [&](double x, std::size_t ln) {
    if (!options.log_normalize) return x;
    if (!(x > 0.0)) {
      throw Error(Errc::Io, "line " + std::to_string(ln) + ": log normalisation needs x > 0");
    }
    return std::log(x / options.truth);
  };

  std::vector<TrialRecord> records;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = split_csv(line);
    if (f.size() != header.size()) {
      throw Error(Errc::Io, "line " + std::to_string(lineno) + ": expected " +
                                std::to_string(header.size()) + " fields, got " +
                                std::to_string(f.size()));
    }
    TrialRecord r;
    r.subject = f[0];
    r.a_initial = normalize(parse_number(f[1], lineno), lineno);
    if (is_pair) {
      r.message = MessagePair{normalize(parse_number(f[2], lineno), lineno),
                              normalize(parse_number(f[3], lineno), lineno)};
      r.a_updated = normalize(parse_number(f[4], lineno), lineno);
    } else {
      r.message = AveragedMessage{normalize(parse_number(f[2], lineno), lineno)};
      r.a_updated = normalize(parse_number(f[3], lineno), lineno);
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace odl::estimate
