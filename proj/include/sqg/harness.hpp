#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "sqg/config.hpp"
#include "sqg/solver.hpp"

namespace sqg {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;          // valid run / verdict PASS
inline constexpr int kExitConfig = 1;      // unusable config, usage error, failed verdict
inline constexpr int kExitRegularity = 2;  // solution lost regularity mid-run
inline constexpr int kExitValidity = 3;    // completed but failed the concentration check

// $SQG_OUT_DIR when set, ./out otherwise.
std::filesystem::path output_root();

inline constexpr const char* kSolverVersion = "1.0.0";

struct RunArtifacts {
  std::filesystem::path dir;
  Trajectory trajectory;
  bool boundary_ok = true;  // initial state concentrated away from the seam
  int exit_code = kExitOk;
};

// Integrates one config and persists manifest.json, timeseries.csv, and SQGF
// snapshots under dir.  Every file is written with a ".partial" suffix and
// renamed on completion; the manifest lands last.  Throws for config-class
// failures (data family rejection, unwritable directory); regularity loss is
// reported through the trajectory and exit code instead.
RunArtifacts execute_run(const RunConfig& cfg, const std::string& config_text,
                         const std::filesystem::path& dir);

int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err);

struct SweepOptions {
  std::vector<double> epsilons;  // must be >= 3, strictly decreasing
  std::string regime;            // "", "fixed" or "combined" (override)
  double alpha = -1.0;           // override when >= 0 (combined only)
};

// Runs one trajectory per epsilon, writes member artifacts under
// <root>/<name>-sweep-<kind>/eps_*/, then sweep.csv and sweep_manifest.json
// with the deviation-vs-limit column and the monotonicity verdict.
int cmd_sweep(const std::string& config_path, const SweepOptions& opt, std::ostream& out,
              std::ostream& err);

}  // namespace sqg
