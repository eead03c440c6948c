// Command-line front end: simulate, sweep, classify, fit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "odl/classify.hpp"
#include "odl/config.hpp"
#include "odl/error.hpp"
#include "odl/estimate.hpp"
#include "odl/runner.hpp"

#ifndef ODL_VERSION
#define ODL_VERSION "0.0.0"
#endif

namespace {

using nlohmann::json;

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

// Raised for problems with the user's inputs, as opposed to failures while
// running; decides the exit code.
struct ValidationFailure {
  std::string message;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("odl");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  const char* env = std::getenv("ODL_LOG");
  if (env == nullptr) return;
  const std::string level = env;
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (level == "warn") {
    spdlog::set_level(spdlog::level::warn);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    spdlog::warn("ignoring ODL_LOG={} (expected error, warn, info or debug)", level);
  }
}

// Parameter problems that only surface once a run starts (an unrealisable
// graph, a bad weight matrix) still count as invalid input.
bool is_validation(odl::Errc code) {
  switch (code) {
    case odl::Errc::Config:
    case odl::Errc::InvalidParams:
    case odl::Errc::LatitudeOrder:
    case odl::Errc::WeightMismatch:
    case odl::Errc::OutOfSpace:
    case odl::Errc::TooFewAgents:
      return true;
    default:
      return false;
  }
}

template <class F>
auto validating(F&& f) {
  try {
    return f();
  } catch (const odl::Error& e) {
    throw ValidationFailure{e.what()};
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationFailure{"cannot open " + path};
  return in;
}

// Final-step attitudes from a trajectory CSV, or a plain one-column list
// with an `attitude` header.
std::vector<double> read_attitudes(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationFailure{"input is empty"};
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const bool trajectory = line == "step,agent,attitude";
  if (!trajectory && line != "attitude") {
    throw ValidationFailure{"expected header 'step,agent,attitude' or 'attitude'"};
  }
  std::vector<double> values;
  long long current = -1;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    double a = 0.0;
    if (trajectory) {
      long long step = 0;
      long long agent = 0;
      char c1 = 0;
      char c2 = 0;
      if (!(ls >> step >> c1 >> agent >> c2 >> a) || c1 != ',' || c2 != ',') {
        throw ValidationFailure{"line " + std::to_string(lineno) + ": malformed row"};
      }
      if (step != current) {
        current = step;
        values.clear();
      }
    } else if (!(ls >> a)) {
      throw ValidationFailure{"line " + std::to_string(lineno) + ": not a number"};
    }
    values.push_back(a);
  }
  if (values.empty()) throw ValidationFailure{"input has no attitudes"};
  return values;
}

int cmd_simulate(const std::string& config_path, const std::optional<std::uint64_t>& seed,
                 const std::string& out_dir) {
  auto cfg = validating([&] {
    auto doc = odl::io::read_json_file(config_path);
    if (seed && doc.is_object()) doc["seed"] = *seed;
    return odl::io::parse_run_config(doc);
  });
  const auto out = odl::io::run_simulation(cfg, out_dir);
  std::cout << out.trajectory.string() << '\n' << out.classification.string() << '\n';
  return 0;
}

int cmd_sweep(const std::string& config_path, std::optional<std::size_t> jobs,
              const std::string& out_path) {
  auto sweep = validating([&] {
    return odl::io::parse_sweep_config(odl::io::read_json_file(config_path));
  });
  const auto rows = odl::io::run_sweep(sweep, jobs.value_or(sweep.jobs));
  const std::string target = out_path.empty() ? sweep.output : out_path;
  if (target.empty()) {
    odl::io::write_sweep_csv(std::cout, sweep, rows);
  } else {
    std::ofstream out(target, std::ios::binary);
    if (!out) throw odl::Error(odl::Errc::Io, "cannot write " + target);
    odl::io::write_sweep_csv(out, sweep, rows);
  }
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
  if (failed > 0) spdlog::warn("{} of {} replicas failed; see the error column", failed, rows.size());
  return 0;
}

int cmd_classify(const std::string& input, double bound, std::optional<double> eps_ext,
                 std::size_t bins) {
  auto in = open_input(input);
  const auto attitudes = read_attitudes(in);
  auto result = validating([&] {
    odl::io::ClassifierConfig cfg;
    cfg.summary.bins = bins;
    cfg.eps_ext = eps_ext.value_or(0.8 * bound);
    if (!(*cfg.eps_ext > 0.0 && *cfg.eps_ext < bound)) {
      throw odl::Error(odl::Errc::InvalidParams, "--eps-ext must lie in (0, bound)");
    }
    return odl::io::classify_attitudes(attitudes, odl::AttitudeSpace::bounded(bound), cfg);
  });
  json j;
  j["label"] = std::string(odl::classify::label_name(result.label));
  j["modes"] = result.summary.modes;
  j["median"] = result.summary.median;
  j["variance"] = result.summary.variance;
  j["params"] = {{"bins", bins}, {"bound", bound}, {"eps_ext", result.eps_ext},
                 {"agents", attitudes.size()}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_fit(const std::string& what, const std::string& input, double tol, bool log_normalize,
            double truth) {
  auto in = open_input(input);
  const auto records = validating([&] {
    return odl::estimate::read_trials_csv(in, {log_normalize, truth});
  });
  json j;
  if (what == "alpha") {
    json subjects = json::array();
    std::size_t skipped = 0;
    for (const auto& r : records) {
      json s;
      s["subject"] = r.subject;
      try {
        const double a = odl::estimate::estimate_alpha(r);
        s["alpha"] = a;
        s["responder"] = std::string(odl::estimate::responder_name(
            validating([&] { return odl::estimate::classify_responder(a, tol); })));
      } catch (const odl::Error& e) {
        if (e.code() == odl::Errc::InvalidParams) throw ValidationFailure{e.what()};
        s["error"] = e.what();
        ++skipped;
      }
      subjects.push_back(std::move(s));
    }
    j["subjects"] = std::move(subjects);
    j["skipped"] = skipped;
    j["tol"] = tol;
  } else {
    std::vector<odl::estimate::HewPoint> points;
    for (const auto& r : records) {
      const auto* pair = std::get_if<odl::estimate::MessagePair>(&r.message);
      if (pair == nullptr) throw ValidationFailure{"fit hew needs subject,a_initial,m_m,m_n,a_final"};
      try {
        points.push_back({std::abs(pair->m - r.a_initial),
                          odl::estimate::estimate_hew_weight(r.a_updated, pair->m, pair->n)});
      } catch (const odl::Error& e) {
        spdlog::warn("subject {}: {}", r.subject, e.what());
      }
    }
    const auto fit = validating([&] { return odl::estimate::fit_hew_curve(points); });
    j["alpha"] = fit.alpha;
    j["beta"] = fit.beta;
    j["rss"] = fit.rss;
    j["points"] = points.size();
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Agent-based opinion dynamics: simulate, sweep, classify and fit"};
  app.set_version_flag("--version", std::string(ODL_VERSION));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  auto* simulate = app.add_subcommand("simulate", "run one simulation from a config file");
  simulate->add_option("--config", config_path, "run config (JSON)")->required();
  simulate->add_option("--seed", seed, "override the config seed");
  simulate->add_option("--out", out_dir, "output directory");

  std::optional<std::size_t> jobs;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  sweep->add_option("--config", config_path, "sweep config (JSON)")->required();
  sweep->add_option("--jobs", jobs, "worker threads (0: one per hardware thread)");
  sweep->add_option("--out", sweep_out, "phase-table CSV (default: config output or stdout)");

  std::string input;
  double bound = 1.0;
  std::optional<double> eps_ext;
  std::size_t bins = 41;
  auto* classify = app.add_subcommand("classify", "label a final attitude distribution");
  classify->add_option("--input", input, "trajectory CSV or single 'attitude' column")->required();
  classify->add_option("--bound", bound, "attitude bound M")->required()->check(CLI::PositiveNumber);
  classify->add_option("--eps-ext", eps_ext, "extremization threshold (default 0.8 M)");
  classify->add_option("--bins", bins, "histogram bins")->check(CLI::Range(3, 100000));

  std::string what;
  double tol = 0.05;
  bool log_normalize = false;
  double truth = 1.0;
  auto* fit = app.add_subcommand("fit", "estimate influence parameters from trial data");
  fit->add_option("kind", what, "alpha or hew")->required()->check(CLI::IsMember({"alpha", "hew"}));
  fit->add_option("--input", input, "trial CSV")->required();
  fit->add_option("--tol", tol, "responder band half-width");
  fit->add_flag("--log-normalize", log_normalize, "replace x by log(x / truth) on import");
  fit->add_option("--truth", truth, "true value for --log-normalize");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, seed, out_dir);
    if (*sweep) return cmd_sweep(config_path, jobs, sweep_out);
    if (*classify) return cmd_classify(input, bound, eps_ext, bins);
    if (*fit) return cmd_fit(what, input, tol, log_normalize, truth);
  } catch (const ValidationFailure& f) {
    spdlog::error("{}", f.message);
    return kExitValidation;
  } catch (const odl::Error& e) {
    spdlog::error("{}", e.what());
    return is_validation(e.code()) ? kExitValidation : kExitRuntime;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitRuntime;
  }
  return kExitRuntime;
}
