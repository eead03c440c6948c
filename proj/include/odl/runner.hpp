#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "odl/classify.hpp"
#include "odl/config.hpp"
#include "odl/engine.hpp"

namespace odl::io {

struct Classification {
  classify::DistributionSummary summary;
  classify::Label label = classify::Label::Other;
  double bound = 0.0;    // M used for the label
  double eps_ext = 0.0;  // threshold used for the label
};

// Summarises and labels a final attitude vector. For unbounded spaces the
// histogram half-range is the configured bound, else max |a|.
Classification classify_attitudes(std::span<const double> attitudes, const AttitudeSpace& space,
                                  const ClassifierConfig& config);

struct RunResult {
  Trajectory trajectory;
  Classification classification;
};

// Builds the topology and population and runs the simulation. The initial
// population and the topology draw from streams derived from the seed.
RunResult execute(const RunConfig& config);

// `step,agent,attitude` rows for every recorded step.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
nlohmann::json classification_json(const Classification& c, const RunConfig& config);

struct RunOutputs {
  std::filesystem::path trajectory;
  std::filesystem::path classification;
  classify::Label label = classify::Label::Other;
};
// Runs and writes both files into out_dir (created if missing).
RunOutputs run_simulation(const RunConfig& config, const std::filesystem::path& out_dir);

struct SweepRow {
  std::size_t cell = 0;
  std::size_t replica = 0;
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::optional<Classification> result;
  std::string error;  // non-empty when the replica failed
};

// Runs every (cell, replica) on a pool of `jobs` worker threads (0 means
// one per hardware thread). Rows come back ordered by (cell, replica)
// whatever the job count.
std::vector<SweepRow> run_sweep(const SweepConfig& sweep, std::size_t jobs);

// cell,replica,<axis names>,seed,label,median,variance,modes,error
void write_sweep_csv(std::ostream& out, const SweepConfig& sweep, const std::vector<SweepRow>& rows);

// Shortest text that parses back to the same double.
std::string format_double(double x);

}  // namespace odl::io
