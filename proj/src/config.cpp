#include "sqg/config.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sqg {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where.empty() ? what : where + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
  for (const auto& item : obj.items())
    if (allowed.find(item.key()) == allowed.end())
      fail(where, "unknown key \"" + item.key() + "\"");
}

double require_number(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail(where + "." + key, "missing");
  if (!obj[key].is_number()) fail(where + "." + key, "must be a number");
  return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& where, const std::string& key,
                 double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(where + "." + key, "must be a number");
  return obj[key].get<double>();
}

int int_or(const json& obj, const std::string& where, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) fail(where + "." + key, "must be an integer");
  return obj[key].get<int>();
}

bool bool_or(const json& obj, const std::string& where, const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) fail(where + "." + key, "must be a boolean");
  return obj[key].get<bool>();
}

std::string string_or(const json& obj, const std::string& where, const std::string& key,
                      const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) fail(where + "." + key, "must be a string");
  return obj[key].get<std::string>();
}

GridSpec parse_grid(const json& obj) {
  reject_unknown_keys(obj, "grid", {"n1", "n2", "L1", "L2"});
  GridSpec g;
  g.n1 = int_or(obj, "grid", "n1", 0);
  g.n2 = int_or(obj, "grid", "n2", 0);
  if (!obj.contains("n1") || !obj.contains("n2")) fail("grid", "n1 and n2 are required");
  g.L1 = number_or(obj, "grid", "L1", g.L1);
  g.L2 = number_or(obj, "grid", "L2", g.L2);
  try {
    g.validate();
  } catch (const std::exception& e) {
    fail("grid", e.what());
  }
  return g;
}

ScalingRegime parse_regime(const json& obj) {
  reject_unknown_keys(obj, "regime", {"kind", "epsilon", "nu", "alpha"});
  const std::string kind = string_or(obj, "regime", "kind", "");
  const double epsilon = require_number(obj, "regime", "epsilon");
  try {
    if (kind == "fixed") {
      if (obj.contains("alpha")) fail("regime.alpha", "only valid for the combined regime");
      return ScalingRegime::fixed(epsilon, require_number(obj, "regime", "nu"));
    }
    if (kind == "combined") {
      if (obj.contains("nu")) fail("regime.nu", "derived from alpha in the combined regime");
      return ScalingRegime::combined(epsilon, number_or(obj, "regime", "alpha", 1.0));
    }
  } catch (const std::invalid_argument& e) {
    fail("regime", e.what());
  }
  fail("regime.kind", "must be \"fixed\" or \"combined\"");
}

IllPreparedFamily parse_family(const json& obj) {
  reject_unknown_keys(obj, "data", {"profile", "amp", "seed", "eps_power"});
  IllPreparedFamily fam;
  fam.profile = string_or(obj, "data", "profile", fam.profile);
  if (fam.profile != "default" && fam.profile != "zero")
    fail("data.profile", "must be \"default\" or \"zero\"");
  fam.amp = number_or(obj, "data", "amp", fam.amp);
  if (obj.contains("seed")) {
    if (!obj["seed"].is_number_unsigned()) fail("data.seed", "must be a non-negative integer");
    fam.seed = obj["seed"].get<std::uint64_t>();
  }
  fam.eps_power = number_or(obj, "data", "eps_power", fam.eps_power);
  if (fam.eps_power < 0.0) fail("data.eps_power", "must be non-negative");
  return fam;
}

SolverConfig parse_solver(const json& obj) {
  reject_unknown_keys(obj, "solver",
                      {"t_end", "dt_max", "cfl", "eps_dt_factor", "sample_every", "dealias",
                       "linear_only", "integrator"});
  SolverConfig cfg;
  cfg.t_end = require_number(obj, "solver", "t_end");
  cfg.dt_max = number_or(obj, "solver", "dt_max", cfg.dt_max);
  cfg.cfl = number_or(obj, "solver", "cfl", cfg.cfl);
  cfg.eps_dt_factor = number_or(obj, "solver", "eps_dt_factor", cfg.eps_dt_factor);
  cfg.sample_every = int_or(obj, "solver", "sample_every", cfg.sample_every);
  cfg.dealias = bool_or(obj, "solver", "dealias", cfg.dealias);
  cfg.linear_only = bool_or(obj, "solver", "linear_only", cfg.linear_only);
  const std::string kind = string_or(obj, "solver", "integrator", "ifrk2");
  if (kind == "ifrk2")
    cfg.integrator = TimeIntegrator::IFRK2;
  else if (kind == "ifrk4")
    cfg.integrator = TimeIntegrator::IFRK4;
  else
    fail("solver.integrator", "must be \"ifrk2\" or \"ifrk4\"");
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    fail("solver", e.what());
  }
  return cfg;
}

std::vector<double> parse_output(const json& obj, double t_end) {
  reject_unknown_keys(obj, "output", {"snapshot_times"});
  std::vector<double> times;
  if (!obj.contains("snapshot_times")) return times;
  if (!obj["snapshot_times"].is_array()) fail("output.snapshot_times", "must be an array");
  for (const auto& v : obj["snapshot_times"]) {
    if (!v.is_number()) fail("output.snapshot_times", "entries must be numbers");
    const double t = v.get<double>();
    if (t < 0.0 || t > t_end) fail("output.snapshot_times", "entries must lie in [0, t_end]");
    times.push_back(t);
  }
  return times;
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::string& fallback_name) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("", std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("", "config root must be a JSON object");
  reject_unknown_keys(root, "config",
                      {"version", "name", "grid", "regime", "data", "solver", "output"});

  if (root.contains("version")) {
    if (!root["version"].is_number_integer() || root["version"].get<int>() != 1)
      fail("version", "schema version must be 1");
  }

  RunConfig cfg;
  cfg.name = string_or(root, "config", "name", fallback_name);
  if (cfg.name.empty()) fail("name", "must not be empty");
  if (cfg.name.find('/') != std::string::npos || cfg.name.find("..") != std::string::npos)
    fail("name", "must be a plain directory name");

  if (!root.contains("grid") || !root["grid"].is_object()) fail("grid", "missing object");
  if (!root.contains("regime") || !root["regime"].is_object()) fail("regime", "missing object");
  if (!root.contains("solver") || !root["solver"].is_object()) fail("solver", "missing object");

  cfg.grid = parse_grid(root["grid"]);
  cfg.regime = parse_regime(root["regime"]);
  if (root.contains("data")) {
    if (!root["data"].is_object()) fail("data", "must be an object");
    cfg.family = parse_family(root["data"]);
  }
  cfg.solver = parse_solver(root["solver"]);
  if (root.contains("output")) {
    if (!root["output"].is_object()) fail("output", "must be an object");
    cfg.snapshot_times = parse_output(root["output"], cfg.solver.t_end);
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_run_config(ss.str(), std::filesystem::path(path).stem().string());
}

std::string config_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace sqg
