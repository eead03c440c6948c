#include "odl/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "odl/error.hpp"

namespace odl::classify {

std::string_view label_name(Label label) noexcept {
  switch (label) {
    case Label::Consensus: return "Consensus";
    case Label::Extremization: return "Extremization";
    case Label::Fragmentation: return "Fragmentation";
    case Label::Bipolarization: return "Bipolarization";
    case Label::Other: return "Other";
  }
  return "Other";
}

double median(std::span<const double> xs) {
  if (xs.empty()) throw Error(Errc::EmptyInput, "median of an empty sample");
  std::vector<double> v(xs.begin(), xs.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double variance(std::span<const double> xs) {
  if (xs.empty()) throw Error(Errc::EmptyInput, "variance of an empty sample");
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / n;
}

DistributionSummary summarize(std::span<const double> attitudes, const AttitudeSpace& space,
                              const SummaryOptions& options) {
  if (attitudes.empty()) throw Error(Errc::EmptyInput, "no attitudes to summarise");
  if (options.bins < 3) throw Error(Errc::InvalidParams, "bins must be at least 3");
  for (double a : attitudes) {
    if (!std::isfinite(a)) throw Error(Errc::InvalidParams, "attitudes must be finite");
  }

  DistributionSummary s;
  s.n = attitudes.size();
  double r = 0.0;
  if (space.is_bounded()) {
    r = space.bound();
  } else {
    for (double a : attitudes) r = std::max(r, std::abs(a));
    if (r == 0.0) r = 1.0;
  }
  s.lo = -r;
  s.hi = r;

  const std::size_t bins = options.bins;
  const double width = (s.hi - s.lo) / static_cast<double>(bins);
  s.counts.assign(bins, 0);
  for (double a : attitudes) {
    const double pos = std::floor((a - s.lo) / width);
    const auto b = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
    ++s.counts[b];
  }

  const double threshold = std::max(static_cast<double>(options.min_count),
                                    options.prominence * static_cast<double>(s.n));
  // Plateau-aware local maxima: a run of equal counts is one peak, located
  // at the run's midpoint.
  struct Peak {
    double pos;  // fractional bin index
    std::size_t count;
  };
  std::vector<Peak> peaks;
  for (std::size_t b = 0; b < bins;) {
    std::size_t e = b;
    while (e + 1 < bins && s.counts[e + 1] == s.counts[b]) ++e;
    const std::size_t c = s.counts[b];
    const bool left_ok = b == 0 || s.counts[b - 1] < c;
    const bool right_ok = e == bins - 1 || s.counts[e + 1] < c;
    if (left_ok && right_ok && static_cast<double>(c) >= threshold) {
      peaks.push_back({0.5 * static_cast<double>(b + e), c});
    }
    b = e + 1;
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& x, const Peak& y) { return x.count > y.count; });
  std::vector<double> kept;
  for (const auto& p : peaks) {
    const bool clear = std::all_of(kept.begin(), kept.end(), [&](double q) {
      return std::abs(p.pos - q) >= static_cast<double>(options.min_separation);
    });
    if (clear) kept.push_back(p.pos);
  }
  std::sort(kept.begin(), kept.end());
  for (double q : kept) s.modes.push_back(s.lo + (q + 0.5) * width);

  s.median = median(attitudes);
  s.variance = variance(attitudes);
  return s;
}

Label classify(const DistributionSummary& summary, double bound, double eps_ext) {
  if (!(eps_ext > 0.0 && eps_ext < bound)) {
    throw Error(Errc::InvalidParams, "extremization threshold must lie in (0, bound)");
  }
  const auto& m = summary.modes;
  if (m.empty()) return Label::Other;
  if (m.size() == 1) {
    return std::abs(m.front()) >= eps_ext ? Label::Extremization : Label::Consensus;
  }
  if (m.size() == 2 && m[0] * m[1] < 0.0 && std::abs(m[0]) >= eps_ext &&
      std::abs(m[1]) >= eps_ext) {
    return Label::Bipolarization;
  }
  return Label::Fragmentation;
}

WocMetrics woc_metrics(std::span<const double> before, std::span<const double> after,
                       double truth) {
  if (before.size() != after.size()) {
    throw Error(Errc::LengthMismatch, "before and after differ in length");
  }
  if (before.empty()) throw Error(Errc::EmptyInput, "no attitudes");
  return {std::abs(median(before) - truth), std::abs(median(after) - truth), variance(before),
          variance(after)};
}

}  // namespace odl::classify
