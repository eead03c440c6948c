#include "odl/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "odl/error.hpp"

namespace odl::io {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw Error(Errc::Config, path + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Reads fields off one JSON object and remembers which keys were used so
// leftovers can be reported as unknown.
class Fields {
 public:
  Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) config_error(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }
  std::string path(const std::string& key) const { return join(path_, key); }

  const json& raw(const std::string& key) {
    used_.insert(key);
    return obj_.at(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    return number(key);
  }
  double number(const std::string& key) {
    require(key);
    const json& v = raw(key);
    if (!v.is_number()) config_error(path(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) config_error(path(key), "must be finite");
    return x;
  }

  std::uint64_t integer(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) {
      const auto x = v.get<std::int64_t>();
      if (x < 0) config_error(path(key), "must be non-negative");
      return static_cast<std::uint64_t>(x);
    }
    if (v.is_number_float()) {
      const double x = v.get<double>();
      if (x >= 0.0 && x < 1.8e19 && std::floor(x) == x) return static_cast<std::uint64_t>(x);
    }
    config_error(path(key), "expected a non-negative integer");
  }

  std::string string(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    return string(key);
  }
  std::string string(const std::string& key) {
    require(key);
    const json& v = raw(key);
    if (!v.is_string()) config_error(path(key), "expected a string");
    return v.get<std::string>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_boolean()) config_error(path(key), "expected true or false");
    return v.get<bool>();
  }

  std::vector<double> numbers(const std::string& key) {
    require(key);
    const json& v = raw(key);
    if (!v.is_array()) config_error(path(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) config_error(path(key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  Fields object(const std::string& key) {
    require(key);
    return Fields(raw(key), path(key));
  }

  void require(const std::string& key) const {
    if (!has(key)) config_error(path(key), "required");
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!used_.count(key)) config_error(path(key), "unknown key");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

Preset parse_preset(Fields& f) {
  const std::string type = f.string("type");
  if (type == "degroot") {
    preset::DeGroot p;
    if (f.has("weights")) {
      const json& w = f.raw("weights");
      if (!w.is_array()) config_error(f.path("weights"), "expected a matrix");
      for (std::size_t i = 0; i < w.size(); ++i) {
        const std::string row_path = f.path("weights") + "[" + std::to_string(i) + "]";
        if (!w[i].is_array()) config_error(row_path, "expected an array of numbers");
        std::vector<double> row;
        for (const auto& x : w[i]) {
          if (!x.is_number()) config_error(row_path, "expected an array of numbers");
          row.push_back(x.get<double>());
        }
        p.weights.push_back(std::move(row));
      }
    }
    return p;
  }
  if (type == "hunter") return preset::Hunter{};
  if (type == "deffuant_bc") return preset::DeffuantBC{f.number("epsilon", 0.2)};
  if (type == "hk_bc") return preset::HKBC{f.number("epsilon", 0.2)};
  if (type == "relative_agreement") {
    return preset::RelativeAgreement{f.number("uncertainty", 0.4),
                                     f.boolean("update_uncertainty", true)};
  }
  if (type == "social_judgement") {
    return preset::SocialJudgement{f.number("accept", 0.2), f.number("reject", 0.6)};
  }
  if (type == "lorenz") {
    preset::Lorenz p;
    p.lambda = f.number("lambda", p.lambda);
    p.k = f.number("k", p.k);
    p.rho = f.number("rho", p.rho);
    p.credibility = f.number("credibility", p.credibility);
    return p;
  }
  if (type == "madsen_bayes") {
    preset::MadsenBayes p;
    p.beta = f.number("beta", p.beta);
    p.obs_variance = f.number("obs_variance", p.obs_variance);
    p.initial_sigma = f.number("initial_sigma", p.initial_sigma);
    return p;
  }
  if (type == "baumann") {
    preset::Baumann p;
    p.controversialness = f.number("c", p.controversialness);
    p.homophily = f.number("homophily", p.homophily);
    p.gamma = f.number("gamma", p.gamma);
    p.dt = f.number("dt", p.dt);
    p.contacts = f.integer("contacts", p.contacts);
    p.act_min = f.number("act_min", p.act_min);
    p.delta = f.number("delta", p.delta);
    p.reciprocity = f.number("reciprocity", p.reciprocity);
    const std::string integ = f.string("integrator", "euler");
    if (integ == "euler") {
      p.integrator = Integrator::Euler;
    } else if (integ == "rk4") {
      p.integrator = Integrator::Rk4;
    } else {
      config_error(f.path("integrator"), "expected \"euler\" or \"rk4\"");
    }
    return p;
  }
  if (type == "becker17") {
    return preset::Becker17{f.number("r_target", 0.8), f.number("truth", 0.0)};
  }
  if (type == "becker19") {
    preset::Becker19 p;
    p.noise = f.number("noise", p.noise);
    p.partisan_share = f.number("partisan_share", p.partisan_share);
    p.truth = f.number("truth", p.truth);
    const std::string role = f.string("role", "self_weight");
    if (role == "self_weight") {
      p.role = SigmoidRole::SelfWeight;
    } else if (role == "influence") {
      p.role = SigmoidRole::Influence;
    } else {
      config_error(f.path("role"), "expected \"self_weight\" or \"influence\"");
    }
    return p;
  }
  if (type == "frigo_hew") {
    return preset::FrigoHEW{f.number("dead_band", 5.0), f.number("decay", 10.0)};
  }
  config_error(f.path("type"), "unknown model type '" + type + "'");
}

ModelSpec parse_model(Fields& f, const AttitudeSpace& space) {
  ModelSpec spec = ModelSpec::make(parse_preset(f), space);
  spec.alpha = f.number("alpha", spec.alpha);
  if (f.has("scheduler")) {
    const std::string s = f.string("scheduler");
    if (s == "synchronous") {
      spec.scheduler = Scheduler::Synchronous;
    } else if (s == "random_sequential") {
      spec.scheduler = Scheduler::RandomSequential;
    } else {
      config_error(f.path("scheduler"), "expected \"synchronous\" or \"random_sequential\"");
    }
  }
  f.finish();
  return spec;
}

AttitudeSpace parse_space(Fields& f) {
  const std::string kind = f.string("kind", "bounded");
  AttitudeSpace space = AttitudeSpace::unbounded();
  if (kind == "bounded") {
    const double m = f.number("bound", 1.0);
    if (!(m > 0.0)) config_error(f.path("bound"), "must be positive");
    space = AttitudeSpace::bounded(m);
  } else if (kind != "unbounded") {
    config_error(f.path("kind"), "expected \"bounded\" or \"unbounded\"");
  }
  f.finish();
  return space;
}

InitialDistribution parse_init(Fields& f) {
  const std::string kind = f.string("kind", "uniform");
  InitialDistribution init;
  if (kind == "uniform") {
    UniformInit u;
    if (f.has("lo")) u.lo = f.number("lo");
    if (f.has("hi")) u.hi = f.number("hi");
    if (u.lo && u.hi && *u.lo > *u.hi) config_error(f.path("lo"), "must not exceed hi");
    init = u;
  } else if (kind == "normal") {
    NormalInit g{f.number("mean", 0.0), f.number("sd", 1.0)};
    if (g.sd < 0.0) config_error(f.path("sd"), "must be non-negative");
    init = g;
  } else if (kind == "list") {
    init = ListInit{f.numbers("values")};
  } else {
    config_error(f.path("kind"), "expected \"uniform\", \"normal\" or \"list\"");
  }
  f.finish();
  return init;
}

TopologyConfig parse_topology(Fields& f) {
  const std::string kind = f.string("kind");
  TopologyConfig t;
  if (kind == "complete") {
    t.kind = topo::Complete{};
  } else if (kind == "star") {
    t.kind = topo::Star{f.integer("center", 0)};
  } else if (kind == "random_regular") {
    t.kind = topo::RandomRegular{f.integer("degree", 4)};
  } else if (kind == "scale_free") {
    t.kind = topo::ScaleFree{f.integer("m_attach", 2)};
  } else if (kind == "erdos_renyi") {
    const double p = f.number("p", 0.1);
    if (!(p >= 0.0 && p <= 1.0)) config_error(f.path("p"), "must lie in [0, 1]");
    t.kind = topo::ErdosRenyi{p};
  } else if (kind == "edge_list") {
    t.kind = topo::Explicit{};
    t.edge_list = f.string("path");
  } else {
    config_error(f.path("kind"), "unknown topology kind '" + kind + "'");
  }
  if (f.has("seed")) t.seed = f.integer("seed", 0);
  f.finish();
  return t;
}

ClassifierConfig parse_classifier(Fields& f, const AttitudeSpace& space) {
  ClassifierConfig c;
  c.summary.bins = f.integer("bins", c.summary.bins);
  if (c.summary.bins < 3) config_error(f.path("bins"), "must be at least 3");
  c.summary.min_count = f.integer("min_count", c.summary.min_count);
  c.summary.prominence = f.number("prominence", c.summary.prominence);
  if (!(c.summary.prominence >= 0.0 && c.summary.prominence <= 1.0)) {
    config_error(f.path("prominence"), "must lie in [0, 1]");
  }
  c.summary.min_separation = f.integer("min_separation", c.summary.min_separation);
  if (f.has("bound")) {
    if (space.is_bounded()) {
      config_error(f.path("bound"), "only allowed for unbounded spaces (the space bound is used)");
    }
    c.bound = f.number("bound");
    if (!(*c.bound > 0.0)) config_error(f.path("bound"), "must be positive");
  }
  if (f.has("eps_ext")) {
    c.eps_ext = f.number("eps_ext");
    if (!(*c.eps_ext > 0.0)) config_error(f.path("eps_ext"), "must be positive");
    const std::optional<double> m = space.is_bounded() ? std::optional<double>(space.bound()) : c.bound;
    if (m && !(*c.eps_ext < *m)) config_error(f.path("eps_ext"), "must be below the bound");
  }
  f.finish();
  return c;
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  Fields root(doc, "");
  RunConfig cfg;
  cfg.source = doc;

  AttitudeSpace space = AttitudeSpace::bounded(1.0);
  if (root.has("space")) {
    Fields f = root.object("space");
    space = parse_space(f);
  }
  {
    Fields f = root.object("model");
    cfg.model = parse_model(f, space);
  }
  cfg.agents = root.integer("agents", cfg.agents);
  if (cfg.agents < 2) config_error("agents", "must be at least 2");
  if (root.has("init")) {
    Fields f = root.object("init");
    cfg.init = parse_init(f);
  }
  cfg.steps = root.integer("steps", cfg.steps);
  cfg.seed = root.integer("seed", cfg.seed);
  cfg.record_every = root.integer("record_every", cfg.record_every);
  if (cfg.record_every < 1) config_error("record_every", "must be at least 1");
  if (root.has("topology")) {
    Fields f = root.object("topology");
    cfg.topology = parse_topology(f);
  }
  {
    json empty = json::object();
    Fields f = root.has("classifier") ? root.object("classifier") : Fields(empty, "classifier");
    cfg.classifier = parse_classifier(f, space);
  }
  if (root.has("output")) {
    Fields f = root.object("output");
    cfg.trajectory_file = f.string("trajectory", cfg.trajectory_file);
    cfg.classification_file = f.string("classification", cfg.classification_file);
    f.finish();
  }
  root.finish();

  if (const auto* l = std::get_if<ListInit>(&cfg.init); l && l->values.size() != cfg.agents) {
    config_error("init.values", "needs one value per agent (" + std::to_string(cfg.agents) + ")");
  }
  try {
    validate(cfg.model);
  } catch (const Error& e) {
    throw Error(Errc::Config, e.detail());
  }
  return cfg;
}

SweepConfig parse_sweep_config(const json& doc) {
  Fields root(doc, "");
  SweepConfig sweep;
  root.require("base");
  sweep.base = root.raw("base");
  sweep.replicas = root.integer("replicas", 1);
  if (sweep.replicas < 1) config_error("replicas", "must be at least 1");
  sweep.jobs = root.integer("jobs", 1);
  sweep.output = root.string("output", "");

  root.require("sweep");
  const json& axes = root.raw("sweep");
  if (!axes.is_array() || axes.empty()) config_error("sweep", "expected a non-empty array");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    Fields f(axes[i], "sweep[" + std::to_string(i) + "]");
    SweepAxis axis;
    axis.name = f.string("name");
    if (axis.name == "seed") config_error(f.path("name"), "seeds are derived per replica");
    if (f.has("values")) {
      axis.values = f.numbers("values");
      if (axis.values.empty()) config_error(f.path("values"), "must not be empty");
    } else {
      const double lo = f.number("lo");
      const double hi = f.number("hi");
      const auto steps = f.integer("steps", 2);
      if (steps < 1) config_error(f.path("steps"), "must be at least 1");
      for (std::uint64_t k = 0; k < steps; ++k) {
        axis.values.push_back(steps == 1 ? lo
                                         : lo + (hi - lo) * static_cast<double>(k) /
                                                    static_cast<double>(steps - 1));
      }
    }
    f.finish();
    sweep.axes.push_back(std::move(axis));
  }
  root.finish();

  // Every axis must land on a numeric field: parse the base with each
  // axis's first value in place.
  (void)parse_run_config(sweep.base);
  for (const auto& axis : sweep.axes) {
    SweepConfig probe;
    probe.base = sweep.base;
    probe.axes = {SweepAxis{axis.name, {axis.values.front()}}};
    (void)cell_config(probe, 0, 0);
  }
  return sweep;
}

std::size_t cell_count(const SweepConfig& sweep) {
  std::size_t n = 1;
  for (const auto& a : sweep.axes) n *= a.values.size();
  return n;
}

std::vector<double> cell_values(const SweepConfig& sweep, std::size_t cell) {
  std::vector<double> out(sweep.axes.size());
  for (std::size_t k = sweep.axes.size(); k-- > 0;) {
    const std::size_t len = sweep.axes[k].values.size();
    out[k] = sweep.axes[k].values[cell % len];
    cell /= len;
  }
  return out;
}

std::uint64_t replica_seed(const SweepConfig& sweep, std::size_t cell, std::size_t replica) {
  std::uint64_t base = 0;
  if (sweep.base.is_object() && sweep.base.contains("seed") &&
      sweep.base["seed"].is_number_unsigned()) {
    base = sweep.base["seed"].get<std::uint64_t>();
  }
  return base + static_cast<std::uint64_t>(cell) * sweep.replicas + replica;
}

RunConfig cell_config(const SweepConfig& sweep, std::size_t cell, std::size_t replica) {
  json doc = sweep.base;
  const auto values = cell_values(sweep, cell);
  for (std::size_t k = 0; k < sweep.axes.size(); ++k) {
    const std::string& name = sweep.axes[k].name;
    json* node = &doc;
    std::string walked;
    std::istringstream parts(name);
    std::string part;
    std::vector<std::string> keys;
    while (std::getline(parts, part, '.')) keys.push_back(part);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i].empty()) config_error("sweep", "malformed name '" + name + "'");
      walked = join(walked, keys[i]);
      if (!node->is_object()) config_error(walked, "swept name does not resolve to a field");
      json& child = (*node)[keys[i]];
      if (i + 1 == keys.size()) {
        if (!child.is_null() && !child.is_number()) {
          config_error(walked, "swept name must resolve to a numeric field");
        }
        child = values[k];
      } else {
        if (child.is_null()) child = json::object();
        node = &child;
      }
    }
  }
  doc["seed"] = replica_seed(sweep, cell, replica);
  return parse_run_config(doc);
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Config, path.string() + ": " + e.what());
  }
}

}  // namespace odl::io
