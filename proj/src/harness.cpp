#include "sqg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sqg/diagnostics.hpp"
#include "sqg/transforms.hpp"
#include "sqg/snapshot.hpp"

namespace sqg {
namespace {

using nlohmann::json;

constexpr double kBoundaryValidity = 1e-6;

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

// All artifacts are staged under a .partial name and renamed once complete,
// so a crash never leaves a file that parses.
void commit_file(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path staging = path.string() + ".partial";
  {
    std::ofstream os(staging, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + staging.string());
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("short write to " + staging.string());
  }
  std::filesystem::rename(staging, path);
}

json regime_json(const ScalingRegime& reg) {
  json j;
  j["kind"] = reg.kind == RegimeKind::Fixed ? "fixed" : "combined";
  j["epsilon"] = reg.epsilon;
  j["nu"] = reg.nu;
  if (reg.kind == RegimeKind::Combined) j["alpha"] = reg.alpha;
  return j;
}

json grid_json(const GridSpec& g) {
  return json{{"n1", g.n1}, {"n2", g.n2}, {"L1", g.L1}, {"L2", g.L2}};
}

json family_json(const IllPreparedFamily& fam) {
  return json{{"profile", fam.profile},
              {"amp", fam.amp},
              {"seed", fam.seed},
              {"eps_power", fam.eps_power}};
}

json solver_json(const SolverConfig& cfg) {
  return json{{"t_end", cfg.t_end},
              {"dt_max", cfg.dt_max},
              {"cfl", cfg.cfl},
              {"eps_dt_factor", cfg.eps_dt_factor},
              {"sample_every", cfg.sample_every},
              {"dealias", cfg.dealias},
              {"linear_only", cfg.linear_only},
              {"integrator", cfg.integrator == TimeIntegrator::IFRK2 ? "ifrk2" : "ifrk4"}};
}

size_t nearest_sample(const std::vector<LedgerRow>& ledger, double t) {
  size_t best = 0;
  double gap = std::abs(ledger[0].t - t);
  for (size_t i = 1; i < ledger.size(); ++i) {
    const double d = std::abs(ledger[i].t - t);
    if (d < gap) {
      gap = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::filesystem::path output_root() {
  if (const char* env = std::getenv("SQG_OUT_DIR"); env && *env) return env;
  return "out";
}

RunArtifacts execute_run(const RunConfig& cfg, const std::string& config_text,
                         const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  const IllPreparedData data = make_ill_prepared_data(cfg.grid, cfg.family, cfg.regime.epsilon);

  RunArtifacts art;
  art.dir = dir;
  art.trajectory = integrate(data.theta0, cfg.regime, cfg.solver);
  const Trajectory& traj = art.trajectory;
  art.boundary_ok = traj.ledger.front().boundary_fraction < kBoundaryValidity;

  // time series, one row per ledger sample
  std::string csv = "t,L2,H_half_seminorm,Hs,energy_defect\n";
  for (const LedgerRow& r : traj.ledger)
    csv += fmt(r.t) + "," + fmt(r.l2) + "," + fmt(r.hhalf) + "," + fmt(r.hs) + "," +
           fmt(r.energy_defect) + "\n";
  commit_file(dir / "timeseries.csv", csv);

  json outputs = json::array();
  outputs.push_back(
      {{"file", "timeseries.csv"}, {"bytes", std::filesystem::file_size(dir / "timeseries.csv")}});

  // snapshots at the requested instants, snapped to the sample lattice
  std::vector<double> wanted = cfg.snapshot_times;
  if (wanted.empty()) wanted = {0.0, traj.ledger.back().t};
  for (size_t i = 0; i < wanted.size(); ++i) {
    const size_t at = nearest_sample(traj.ledger, wanted[i]);
    char name[48];
    std::snprintf(name, sizeof(name), "snapshot_%03zu.sqgf", i);
    const std::filesystem::path path = dir / name;
    const std::filesystem::path staging = path.string() + ".partial";
    write_snapshot(staging.string(), inverse_transform(traj.snapshots[at]));
    std::filesystem::rename(staging, path);
    outputs.push_back({{"file", name},
                       {"bytes", std::filesystem::file_size(path)},
                       {"time", traj.ledger[at].t}});
  }

  json manifest;
  manifest["config_hash"] = config_hash(config_text);
  manifest["created"] = iso_timestamp();
  manifest["name"] = cfg.name;
  manifest["grid"] = grid_json(cfg.grid);
  manifest["regime"] = regime_json(cfg.regime);
  manifest["data"] = family_json(cfg.family);
  manifest["solver"] = solver_json(cfg.solver);
  manifest["solver_version"] = kSolverVersion;
  manifest["outputs"] = outputs;
  manifest["stats"] = json{{"steps", traj.steps},
                           {"max_dt", traj.max_dt},
                           {"min_dt", traj.min_dt},
                           {"max_boundary_fraction", traj.max_boundary_fraction},
                           {"initial_l2", data.l2_norm}};
  manifest["validity"] = json{{"regularity_ok", traj.valid},
                              {"boundary_ok", art.boundary_ok},
                              {"valid", traj.valid && art.boundary_ok},
                              {"failure_reason", traj.failure_reason},
                              {"failure_time", traj.failure_time}};
  commit_file(dir / "manifest.json", manifest.dump(2) + "\n");

  art.exit_code = !traj.valid ? kExitRegularity : (!art.boundary_ok ? kExitValidity : kExitOk);
  return art;
}

int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string text;
  try {
    std::ifstream is(config_path);
    if (!is) throw std::runtime_error("cannot open config file " + config_path);
    text.assign(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
    cfg = parse_run_config(text, std::filesystem::path(config_path).stem().string());
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const RunArtifacts art = execute_run(cfg, text, output_root() / cfg.name);
    const Trajectory& traj = art.trajectory;
    out << "run " << cfg.name << ": " << traj.steps << " steps to t = "
        << fmt_short(traj.ledger.back().t) << ", " << traj.ledger.size() << " samples\n";
    if (!traj.valid)
      out << "regularity lost at t = " << fmt_short(traj.failure_time) << " ("
          << traj.failure_reason << ")\n";
    else if (!art.boundary_ok)
      out << "initial data fails the concentration check\n";
    out << "artifacts in " << art.dir.string() << "\n";
    return art.exit_code;
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_sweep(const std::string& config_path, const SweepOptions& opt, std::ostream& out,
              std::ostream& err) {
  if (opt.epsilons.size() < 3) {
    err << "need >= 3 epsilons\n";
    return kExitConfig;
  }
  for (size_t i = 1; i < opt.epsilons.size(); ++i)
    if (!(opt.epsilons[i] < opt.epsilons[i - 1])) {
      err << "epsilons must be strictly decreasing\n";
      return kExitConfig;
    }

  RunConfig base;
  std::string text;
  try {
    std::ifstream is(config_path);
    if (!is) throw std::runtime_error("cannot open config file " + config_path);
    text.assign(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
    base = parse_run_config(text, std::filesystem::path(config_path).stem().string());
    if (opt.regime == "fixed") {
      if (base.regime.kind != RegimeKind::Fixed)
        throw std::invalid_argument("fixed-regime sweep needs a fixed-regime config (nu)");
    } else if (opt.regime == "combined") {
      base.regime = ScalingRegime::combined(base.regime.epsilon,
                                            opt.alpha >= 0.0 ? opt.alpha
                                            : base.regime.kind == RegimeKind::Combined
                                                ? base.regime.alpha
                                                : 1.0);
    } else if (!opt.regime.empty()) {
      throw std::invalid_argument("regime must be \"fixed\" or \"combined\"");
    } else if (opt.alpha >= 0.0) {
      if (base.regime.kind != RegimeKind::Combined)
        throw std::invalid_argument("--alpha only applies to the combined regime");
      base.regime = ScalingRegime::combined(base.regime.epsilon, opt.alpha);
    }
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  const bool combined = base.regime.kind == RegimeKind::Combined;
  const std::filesystem::path dir =
      output_root() / (base.name + "-sweep-" + (combined ? "combined" : "fixed"));

  struct MemberResult {
    double epsilon = 0.0;
    double deviation = 0.0;
    double constraint = 0.0;
    bool valid = false;
    int exit_code = kExitOk;
  };
  std::vector<MemberResult> members;
  std::vector<Trajectory> kept;  // snapshots stripped, zonal series retained
  int worst_member_exit = kExitOk;

  for (double eps : opt.epsilons) {
    RunConfig cfg = base;
    cfg.regime = combined ? ScalingRegime::combined(eps, base.regime.alpha)
                          : ScalingRegime::fixed(eps, base.regime.nu);
    MemberResult m;
    m.epsilon = eps;
    try {
      RunArtifacts art = execute_run(cfg, text, dir / ("eps_" + fmt_short(eps)));
      m.exit_code = art.exit_code;
      m.valid = art.exit_code == kExitOk;
      if (m.valid) {
        m.deviation = deviation_from_limit(art.trajectory);
        m.constraint = constraint_residual(time_average(art.trajectory));
      }
      art.trajectory.snapshots.clear();
      art.trajectory.snapshot_times.clear();
      kept.push_back(std::move(art.trajectory));
    } catch (const std::exception& e) {
      err << "config error: " << e.what() << "\n";
      return kExitConfig;
    }
    worst_member_exit = std::max(worst_member_exit, m.exit_code);
    out << "epsilon " << fmt_short(eps) << ": "
        << (m.valid ? "D = " + fmt_short(m.deviation) : "invalid") << "\n";
    members.push_back(m);
  }

  const bool all_valid = worst_member_exit == kExitOk;
  bool decreasing = true;
  for (size_t i = 1; i < members.size(); ++i)
    if (!(members[i].deviation < members[i - 1].deviation)) decreasing = false;

  // Degenerate sweeps (zonal or zero data) sit at the numerical floor where
  // strict ordering is roundoff noise; they count as converged.
  double floor = 0.0;
  if (!kept.empty() && !kept.front().zonal_series.empty()) {
    const ZonalProfile mean0 = zonal_from_column(base.grid, kept.front().zonal_series.front());
    floor = 1e-8 * zonal_l2_norm(mean0) * std::sqrt(base.solver.t_end);
  }
  bool all_below_floor = true;
  for (const MemberResult& m : members)
    if (m.deviation > floor) all_below_floor = false;

  const bool pass = all_valid && (decreasing || all_below_floor);

  std::string csv = "epsilon,D,constraint_residual,norm_id,T,K_fraction\n";
  for (const MemberResult& m : members)
    csv += fmt(m.epsilon) + "," + fmt(m.deviation) + "," + fmt(m.constraint) +
           ",L2_time_L2_strip," + fmt(base.solver.t_end) + ",0.5\n";
  commit_file(dir / "sweep.csv", csv);

  json manifest;
  manifest["config_hash"] = config_hash(text);
  manifest["created"] = iso_timestamp();
  manifest["name"] = base.name;
  manifest["regime"] = regime_json(base.regime);
  manifest["grid"] = grid_json(base.grid);
  manifest["data"] = family_json(base.family);
  manifest["solver"] = solver_json(base.solver);
  manifest["solver_version"] = kSolverVersion;
  json mem = json::array();
  for (const MemberResult& m : members)
    mem.push_back({{"epsilon", m.epsilon},
                   {"dir", "eps_" + fmt_short(m.epsilon)},
                   {"deviation", m.deviation},
                   {"constraint_residual", m.constraint},
                   {"valid", m.valid}});
  manifest["members"] = mem;
  manifest["deviation_floor"] = floor;
  manifest["verdict"] = pass ? "PASS" : "FAIL";
  commit_file(dir / "sweep_manifest.json", manifest.dump(2) + "\n");

  out << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
  out << "artifacts in " << dir.string() << "\n";
  if (pass) return kExitOk;
  return all_valid ? kExitConfig : worst_member_exit;
}

}  // namespace sqg
