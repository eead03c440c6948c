#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "odl/classify.hpp"
#include "odl/engine.hpp"
#include "odl/model_spec.hpp"
#include "odl/topology.hpp"

// Run and sweep configuration documents. Parsing is strict: unknown keys,
// wrong types and out-of-range values raise Error{Config} naming the field.
namespace odl::io {

struct TopologyConfig {
  TopologyKind kind;
  std::string edge_list;  // path, for edge-list topologies
  std::optional<std::uint64_t> seed;
};

struct ClassifierConfig {
  classify::SummaryOptions summary;
  // Absolute threshold; defaults to 0.8 * bound.
  std::optional<double> eps_ext;
  // Histogram half-range for unbounded spaces; defaults to max |a|.
  std::optional<double> bound;
};

struct RunConfig {
  ModelSpec model;
  std::size_t agents = 100;
  InitialDistribution init = UniformInit{};
  std::size_t steps = 1000;
  std::uint64_t seed = 0;
  std::size_t record_every = 1;
  std::optional<TopologyConfig> topology;
  ClassifierConfig classifier;
  std::string trajectory_file = "trajectory.csv";
  std::string classification_file = "classification.json";
  nlohmann::json source;  // the document as given (seed possibly overridden)
};

RunConfig parse_run_config(const nlohmann::json& doc);

struct SweepAxis {
  std::string name;  // dotted path into the base document, e.g. "model.epsilon"
  std::vector<double> values;
};

struct SweepConfig {
  nlohmann::json base;
  std::vector<SweepAxis> axes;
  std::size_t replicas = 1;
  std::size_t jobs = 1;
  std::string output;  // empty: standard output
};

SweepConfig parse_sweep_config(const nlohmann::json& doc);

// Cells enumerate the cartesian product of the axes, first axis slowest.
std::size_t cell_count(const SweepConfig& sweep);
std::vector<double> cell_values(const SweepConfig& sweep, std::size_t cell);
// base seed + cell * replicas + replica
std::uint64_t replica_seed(const SweepConfig& sweep, std::size_t cell, std::size_t replica);
RunConfig cell_config(const SweepConfig& sweep, std::size_t cell, std::size_t replica);

// Reads and parses a JSON document; Error{Io} if unreadable, Error{Config}
// on a syntax error.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace odl::io
