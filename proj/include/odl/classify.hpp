#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "odl/core.hpp"

// Macro-level description of an attitude distribution.
namespace odl::classify {

enum class Label { Consensus, Extremization, Fragmentation, Bipolarization, Other };

std::string_view label_name(Label label) noexcept;

struct SummaryOptions {
  std::size_t bins = 41;
  // A mode needs at least max(min_count, prominence * N) agents in its bin.
  std::size_t min_count = 2;
  double prominence = 0.05;
  // Minimum distance between two modes, in bins; of two closer peaks only
  // the taller survives.
  std::size_t min_separation = 2;
};

struct DistributionSummary {
  double lo = 0.0;  // histogram range
  double hi = 0.0;
  std::vector<std::size_t> counts;
  std::vector<double> modes;  // ascending bin-centre locations
  double median = 0.0;
  double variance = 0.0;
  std::size_t n = 0;
};

// Histogram over [-M, M] in a bounded space. In an unbounded space the range
// is [-R, R] with R = max |a| (R = 1 if every attitude is 0), so zero stays
// a bin centre for odd bin counts. Throws Error{EmptyInput}, and
// Error{InvalidParams} for fewer than 3 bins.
DistributionSummary summarize(std::span<const double> attitudes, const AttitudeSpace& space,
                              const SummaryOptions& options = {});

// 1 mode: Consensus, or Extremization if |mode| >= eps_ext. 2+ modes:
// Fragmentation, or Bipolarization for exactly two opposite-sign modes both
// at least eps_ext from zero. No mode: Other.
// Throws Error{InvalidParams} unless 0 < eps_ext < bound.
Label classify(const DistributionSummary& summary, double bound, double eps_ext);

// Middle value (mean of the two middle values for even N).
double median(std::span<const double> xs);
// Population variance (divides by N).
double variance(std::span<const double> xs);

struct WocMetrics {
  double median_error_before = 0.0;
  double median_error_after = 0.0;
  double variance_before = 0.0;
  double variance_after = 0.0;
};
// Throws Error{LengthMismatch} or Error{EmptyInput}.
WocMetrics woc_metrics(std::span<const double> before, std::span<const double> after,
                       double truth);

}  // namespace odl::classify
