#include "odl/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include <spdlog/spdlog.h>

#include "odl/error.hpp"

namespace odl::io {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Classification classify_attitudes(std::span<const double> attitudes, const AttitudeSpace& space,
                                  const ClassifierConfig& config) {
  Classification c;
  AttitudeSpace hist_space = space;
  if (!space.is_bounded() && config.bound) hist_space = AttitudeSpace::bounded(*config.bound);
  c.summary = classify::summarize(attitudes, hist_space, config.summary);
  c.bound = c.summary.hi;
  c.eps_ext = config.eps_ext.value_or(0.8 * c.bound);
  // With a data-driven range the threshold can exceed the range; then no
  // mode can reach it, which the label rule already expresses, so only the
  // check bound is widened.
  const double check_bound =
      std::max(c.bound, std::nextafter(c.eps_ext, std::numeric_limits<double>::infinity()));
  c.label = classify::classify(c.summary, check_bound, c.eps_ext);
  return c;
}

RunResult execute(const RunConfig& config) {
  std::optional<Topology> topology;
  if (config.topology) {
    const auto& t = *config.topology;
    if (std::holds_alternative<topo::Explicit>(t.kind)) {
      std::ifstream in(t.edge_list);
      if (!in) throw Error(Errc::Io, "cannot open edge list " + t.edge_list);
      topology = Topology::read_edge_list(in, config.agents);
    } else {
      topology = generate_topology(t.kind, config.agents, t.seed.value_or(derive_seed(config.seed, 1)));
    }
  }
  Rng init_rng(derive_seed(config.seed, 0));
  Population pop =
      make_population(config.model, config.agents, config.init, init_rng, std::move(topology));
  RunResult result;
  result.trajectory =
      simulate(config.model, pop, config.steps, config.seed, {config.record_every});
  const auto final_attitudes = result.trajectory.final_state.attitudes();
  result.classification =
      classify_attitudes(final_attitudes, config.model.space, config.classifier);
  return result;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "step,agent,attitude\n";
  for (std::size_t r = 0; r < trajectory.attitudes.size(); ++r) {
    const auto& row = trajectory.attitudes[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << trajectory.steps[r] << ',' << i << ',' << format_double(row[i]) << '\n';
    }
  }
}

json classification_json(const Classification& c, const RunConfig& config) {
  json j;
  j["label"] = std::string(classify::label_name(c.label));
  j["modes"] = c.summary.modes;
  j["median"] = c.summary.median;
  j["variance"] = c.summary.variance;
  json params;
  params["bins"] = c.summary.counts.size();
  params["bound"] = c.bound;
  params["eps_ext"] = c.eps_ext;
  params["model"] = preset_name(config.model.preset);
  params["agents"] = config.agents;
  params["steps"] = config.steps;
  params["seed"] = config.seed;
  params["config"] = config.source;
  j["params"] = std::move(params);
  return j;
}

RunOutputs run_simulation(const RunConfig& config, const std::filesystem::path& out_dir) {
  spdlog::info("simulating {} agents of {} for {} steps, seed {}", config.agents,
               preset_name(config.model.preset), config.steps, config.seed);
  const RunResult result = execute(config);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::Io, "cannot create " + out_dir.string() + ": " + ec.message());

  RunOutputs paths{out_dir / config.trajectory_file, out_dir / config.classification_file,
                   result.classification.label};
  {
    std::ofstream out(paths.trajectory, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write " + paths.trajectory.string());
    write_trajectory_csv(out, result.trajectory);
    if (!out) throw Error(Errc::Io, "write failed: " + paths.trajectory.string());
  }
  {
    std::ofstream out(paths.classification, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write " + paths.classification.string());
    out << classification_json(result.classification, config).dump(2) << '\n';
    if (!out) throw Error(Errc::Io, "write failed: " + paths.classification.string());
  }
  spdlog::info("label {}", classify::label_name(result.classification.label));
  return paths;
}

std::vector<SweepRow> run_sweep(const SweepConfig& sweep, std::size_t jobs) {
  const std::size_t cells = cell_count(sweep);
  const std::size_t total = cells * sweep.replicas;
  std::vector<SweepRow> rows(total);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(total, 1));
  spdlog::info("sweep: {} cells x {} replicas on {} worker(s)", cells, sweep.replicas, jobs);

  // Each task writes only its own slot, so the output order is fixed by the
  // task index and not by which worker finishes first.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t task = next++; task < total; task = next++) {
      SweepRow& row = rows[task];
      row.cell = task / sweep.replicas;
      row.replica = task % sweep.replicas;
      row.values = cell_values(sweep, row.cell);
      row.seed = replica_seed(sweep, row.cell, row.replica);
      try {
        const RunConfig cfg = cell_config(sweep, row.cell, row.replica);
        RunConfig lean = cfg;
        lean.record_every = std::max<std::size_t>(cfg.steps, 1);
        row.result = execute(lean).classification;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      spdlog::debug("cell {} replica {} done", row.cell, row.replica);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepConfig& sweep, const std::vector<SweepRow>& rows) {
  out << "cell,replica";
  for (const auto& a : sweep.axes) out << ',' << csv_field(a.name);
  out << ",seed,label,median,variance,modes,error\n";
  for (const auto& r : rows) {
    out << r.cell << ',' << r.replica;
    for (double v : r.values) out << ',' << format_double(v);
    out << ',' << r.seed << ',';
    if (r.result) {
      std::string modes;
      for (double m : r.result->summary.modes) {
        if (!modes.empty()) modes += ';';
        modes += format_double(m);
      }
      out << classify::label_name(r.result->label) << ',' << format_double(r.result->summary.median)
          << ',' << format_double(r.result->summary.variance) << ',' << modes << ',';
    } else {
      out << ",,,,";
    }
    out << csv_field(r.error) << '\n';
  }
}

}  // namespace odl::io
