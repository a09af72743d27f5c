#pragma once

#include <string>
#include <vector>

#include "sqg/grid.hpp"
#include "sqg/solver.hpp"

namespace sqg {

// One experiment, as described by a JSON config file (schema version 1).
// Parsing is strict: unknown keys anywhere are errors, as are out-of-range
// values; defaults fill whatever is omitted.
struct RunConfig {
  std::string name;  // defaults to the config file stem
  GridSpec grid;
  ScalingRegime regime;
  IllPreparedFamily family;
  SolverConfig solver;
  // Requested snapshot instants; snapped to the nearest sample time on
  // output.  Empty means initial and final state only.
  std::vector<double> snapshot_times;
};

// Throws std::invalid_argument with a path-like message ("regime.epsilon: …")
// on any schema violation.
RunConfig parse_run_config(const std::string& text, const std::string& fallback_name);

// Reads the file (std::runtime_error when unreadable) and parses it, using
// the file stem as the fallback name.
RunConfig load_run_config(const std::string& path);

// FNV-1a 64-bit hash of the raw config bytes, 16 lowercase hex digits.
std::string config_hash(const std::string& text);

}  // namespace sqg
