#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gen.hpp"
#include "odl/config.hpp"
#include "odl/error.hpp"
#include "odl/runner.hpp"

using namespace odl::io;
using nlohmann::json;
using odl::Errc;

namespace {

json deffuant_doc() {
  return json::parse(R"({
    "model": {"type": "deffuant_bc", "alpha": 0.5, "epsilon": 1.0},
    "space": {"kind": "bounded", "bound": 0.5},
    "agents": 100,
    "steps": 10000,
    "seed": 3
  })");
}

std::string config_error(const json& doc) {
  try {
    parse_run_config(doc);
  } catch (const odl::Error& e) {
    CHECK(e.code() == Errc::Config);
    return e.detail();
  }
  FAIL_CHECK("config accepted: " << doc.dump());
  return {};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name)
      : path(std::filesystem::temp_directory_path() / ("odl_test_" + name)) {
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("parse a run config") {
  const auto cfg = parse_run_config(deffuant_doc());
  CHECK(cfg.agents == 100);
  CHECK(cfg.steps == 10000);
  CHECK(cfg.seed == 3);
  CHECK(cfg.model.space.bound() == 0.5);
  CHECK(cfg.model.scheduler == odl::Scheduler::RandomSequential);
  CHECK(std::get<odl::preset::DeffuantBC>(cfg.model.preset).epsilon == 1.0);
}

TEST_CASE("config errors name the field") {
  auto doc = deffuant_doc();
  doc["model"]["bogus"] = 1;
  CHECK(config_error(doc).find("model.bogus") != std::string::npos);

  doc = deffuant_doc();
  doc["agents"] = 1;
  CHECK(config_error(doc).find("agents") != std::string::npos);

  doc = deffuant_doc();
  doc["steps"] = -5;
  CHECK(config_error(doc).find("steps") != std::string::npos);

  doc = deffuant_doc();
  doc["model"]["epsilon"] = "wide";
  CHECK(config_error(doc).find("model.epsilon") != std::string::npos);

  doc = deffuant_doc();
  doc["model"]["type"] = "nonsense";
  CHECK(config_error(doc).find("model.type") != std::string::npos);

  doc = deffuant_doc();
  doc["extra"] = true;
  CHECK(config_error(doc).find("extra") != std::string::npos);

  doc = deffuant_doc();
  doc["topology"] = json::parse(R"({"kind": "random_regular", "degree": 4, "p": 0.5})");
  CHECK(config_error(doc).find("topology.p") != std::string::npos);
}

TEST_CASE("every model type parses") {
  const char* docs[] = {
      R"({"model": {"type": "degroot"}})",
      R"({"model": {"type": "hunter", "alpha": 0.1}})",
      R"({"model": {"type": "hk_bc", "epsilon": 0.3}})",
      R"({"model": {"type": "relative_agreement", "uncertainty": 0.3, "update_uncertainty": false}})",
      R"({"model": {"type": "social_judgement", "accept": 0.1, "reject": 0.6}})",
      R"({"model": {"type": "lorenz", "lambda": 0.4, "k": 3, "rho": 0.5, "credibility": 0.9}})",
      R"({"model": {"type": "madsen_bayes", "beta": 2, "obs_variance": 0.5}, "space": {"kind": "unbounded"}})",
      R"({"model": {"type": "baumann", "c": 3, "integrator": "rk4"}, "space": {"kind": "unbounded"}})",
      R"({"model": {"type": "becker17", "r_target": -0.5, "truth": 1}, "space": {"kind": "unbounded"}})",
      R"({"model": {"type": "becker19", "role": "influence"}, "space": {"kind": "unbounded"}})",
      R"({"model": {"type": "frigo_hew", "dead_band": 5, "decay": 10}, "space": {"kind": "unbounded"}})",
  };
  for (const char* d : docs) {
    CAPTURE(d);
    CHECK_NOTHROW(parse_run_config(json::parse(d)));
  }
}

TEST_CASE("deffuant with everyone in bound reaches consensus") {
  const auto result = execute(parse_run_config(deffuant_doc()));
  CHECK(result.classification.label == odl::classify::Label::Consensus);
}

TEST_CASE("run_simulation writes both outputs deterministically") {
  TempDir dir("run");
  auto doc = deffuant_doc();
  doc["steps"] = 0;
  const auto cfg = parse_run_config(doc);
  const auto out = run_simulation(cfg, dir.path / "a");
  const std::string csv = read_file(out.trajectory);
  CHECK(csv.rfind("step,agent,attitude\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 1 + 100);

  const auto j = json::parse(read_file(out.classification));
  for (const char* key : {"label", "modes", "median", "variance", "params"}) CHECK(j.contains(key));

  const auto full = parse_run_config(deffuant_doc());
  const auto r1 = run_simulation(full, dir.path / "b");
  const auto r2 = run_simulation(full, dir.path / "c");
  CHECK(read_file(r1.trajectory) == read_file(r2.trajectory));
  CHECK(read_file(r1.classification) == read_file(r2.classification));
}

TEST_CASE("trajectory CSV values round-trip exactly") {
  auto doc = deffuant_doc();
  doc["steps"] = 50;
  const auto result = execute(parse_run_config(doc));
  std::stringstream ss;
  write_trajectory_csv(ss, result.trajectory);
  std::string line;
  std::getline(ss, line);
  std::size_t row = 0;
  while (std::getline(ss, line)) {
    const auto last = line.rfind(',');
    const double v = std::stod(line.substr(last + 1));
    const std::size_t r = row / 100;
    REQUIRE(v == result.trajectory.attitudes[r][row % 100]);
    ++row;
  }
}

TEST_CASE("sweep parsing and cell enumeration") {
  const auto doc = json::parse(R"({
    "base": {"model": {"type": "deffuant_bc", "epsilon": 0.2}, "agents": 20, "steps": 200, "seed": 10},
    "sweep": [
      {"name": "model.epsilon", "lo": 0.1, "hi": 0.5, "steps": 5},
      {"name": "model.alpha", "values": [0.2, 0.4]}
    ],
    "replicas": 3
  })");
  const auto sweep = parse_sweep_config(doc);
  CHECK(cell_count(sweep) == 10);
  CHECK(cell_values(sweep, 0) == std::vector<double>{0.1, 0.2});
  CHECK(cell_values(sweep, 1) == std::vector<double>{0.1, 0.4});
  CHECK(cell_values(sweep, 9)[0] == doctest::Approx(0.5));
  CHECK(replica_seed(sweep, 4, 2) == 10 + 4 * 3 + 2);
  const auto cfg = cell_config(sweep, 3, 1);
  CHECK(std::get<odl::preset::DeffuantBC>(cfg.model.preset).epsilon == doctest::Approx(0.2));
  CHECK(cfg.model.alpha == 0.4);
  CHECK(cfg.seed == 10 + 3 * 3 + 1);

  auto bad = doc;
  bad["sweep"][0]["name"] = "model.nothing";
  CHECK_ERRC(parse_sweep_config(bad), Errc::Config);
  bad = doc;
  bad["sweep"][0]["name"] = "seed";
  CHECK_ERRC(parse_sweep_config(bad), Errc::Config);
  bad = doc;
  bad["replicas"] = 0;
  CHECK_ERRC(parse_sweep_config(bad), Errc::Config);
}

TEST_CASE("sweep output does not depend on the job count") {
  const auto doc = json::parse(R"({
    "base": {"model": {"type": "deffuant_bc"}, "agents": 30, "steps": 2000, "seed": 100},
    "sweep": [{"name": "model.epsilon", "lo": 0.05, "hi": 1.0, "steps": 8}],
    "replicas": 2
  })");
  const auto sweep = parse_sweep_config(doc);
  std::stringstream one, many;
  write_sweep_csv(one, sweep, run_sweep(sweep, 1));
  write_sweep_csv(many, sweep, run_sweep(sweep, 8));
  CHECK(one.str() == many.str());
  CHECK(one.str().rfind("cell,replica,model.epsilon,seed,label,median,variance,modes,error\n", 0) ==
        0);

  // A row is reproducible from its cell config alone.
  const auto rows = run_sweep(sweep, 3);
  const auto again = execute(cell_config(sweep, rows[5].cell, rows[5].replica));
  CHECK(again.classification.label == rows[5].result->label);
  CHECK(again.classification.summary.median == rows[5].result->summary.median);
}

TEST_CASE("a failing replica becomes an error row") {
  const auto doc = json::parse(R"({
    "base": {"model": {"type": "degroot"}, "agents": 5, "steps": 10,
             "topology": {"kind": "random_regular", "degree": 2}},
    "sweep": [{"name": "topology.degree", "values": [2, 3]}]
  })");
  const auto sweep = parse_sweep_config(doc);
  const auto rows = run_sweep(sweep, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].error.empty());
  CHECK_FALSE(rows[1].error.empty());
  CHECK_FALSE(rows[1].result.has_value());
}

TEST_CASE("classify_attitudes for an unbounded run") {
  std::vector<double> a(50, -3.0);
  a.resize(100, 3.0);
  ClassifierConfig cfg;
  const auto c = classify_attitudes(a, odl::AttitudeSpace::unbounded(), cfg);
  CHECK(c.bound == 3.0);
  CHECK(c.label == odl::classify::Label::Bipolarization);
  cfg.eps_ext = 5.0;
  CHECK(classify_attitudes(a, odl::AttitudeSpace::unbounded(), cfg).label ==
        odl::classify::Label::Fragmentation);
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.5) == "-2.5");
  odl::Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const double x = rng.normal() * 1e3;
    REQUIRE(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("read_json_file errors") {
  CHECK_ERRC(read_json_file("/nonexistent/odl.json"), Errc::Io);
  TempDir dir("json");
  std::filesystem::create_directories(dir.path);
  const auto p = dir.path / "bad.json";
  std::ofstream(p) << "{ not json";
  CHECK_ERRC(read_json_file(p), Errc::Config);
}

TEST_CASE("shipped deffuant sweep shows consensus and fragmentation") {
  const auto sweep = parse_sweep_config(read_json_file(ODL_CONFIG_DIR "/deffuant_sweep.json"));
  REQUIRE(cell_count(sweep) == 20);
  const auto rows = run_sweep(sweep, 1);
  int consensus = 0, fragmentation = 0;
  for (const auto& r : rows) {
    REQUIRE(r.result.has_value());
    consensus += r.result->label == odl::classify::Label::Consensus ? 1 : 0;
    fragmentation += r.result->label == odl::classify::Label::Fragmentation ? 1 : 0;
  }
  CHECK(consensus >= 1);
  CHECK(fragmentation >= 1);
}

TEST_CASE("shipped configs parse") {
  for (const char* name : {"deffuant.json", "degroot.json", "baumann.json", "becker17.json",
                           "becker19.json"}) {
    CAPTURE(name);
    CHECK_NOTHROW(parse_run_config(read_json_file(std::string(ODL_CONFIG_DIR) + "/" + name)));
  }
  for (const char* name : {"deffuant_sweep.json", "sj_sweep.json", "bc_phase.json"}) {
    CAPTURE(name);
    CHECK_NOTHROW(parse_sweep_config(read_json_file(std::string(ODL_CONFIG_DIR) + "/" + name)));
  }
}
