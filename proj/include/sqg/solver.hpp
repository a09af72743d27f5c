#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sqg/field.hpp"
#include "sqg/grid.hpp"

namespace sqg {

// How the dissipation strength couples to the rotation parameter.
//
//   Fixed:    nu is an independent constant.
//   Combined: nu = epsilon^alpha, so weakening rotation also weakens damping.
enum class RegimeKind { Fixed, Combined };

struct ScalingRegime {
  RegimeKind kind = RegimeKind::Fixed;
  double epsilon = 1.0;
  double nu = 1.0;     // resolved value; for Combined this equals pow(epsilon, alpha)
  double alpha = 1.0;  // only meaningful for Combined

  static ScalingRegime fixed(double epsilon, double nu);
  static ScalingRegime combined(double epsilon, double alpha);
};

enum class TimeIntegrator { IFRK2, IFRK4 };

struct SolverConfig {
  double dt_max = 1e-2;
  double t_end = 1.0;
  double cfl = 0.5;
  // Extra cap dt <= eps_dt_factor * epsilon so the fastest phase stays
  // resolved; non-positive disables the cap.
  double eps_dt_factor = 1.0;
  int sample_every = 1;  // ledger/snapshot cadence in steps
  bool dealias = true;
  bool linear_only = false;  // drop the advection term (exact-solution runs)
  TimeIntegrator integrator = TimeIntegrator::IFRK2;

  void validate() const;  // throws std::invalid_argument
};

struct LedgerRow {
  double t = 0.0;
  double l2 = 0.0;
  double hhalf = 0.0;        // |Lambda^{1/2} theta|_{L2}
  double hs = 0.0;           // dyadic-block Sobolev norm, s = kLedgerSobolevIndex
  double energy_defect = 0.0;
  double boundary_fraction = 0.0;  // mass fraction in the outer 10% of x2
};

// Sobolev index tracked in the per-sample ledger.
inline constexpr double kLedgerSobolevIndex = 2.5;

struct Trajectory {
  GridSpec grid;
  ScalingRegime regime;
  SolverConfig config;

  // Sampled every config.sample_every steps, always including the initial
  // and final states.  zonal_series[i] holds the horizontal-mean column
  // (n2 coefficients, x1-frequency zero) at ledger[i].t.
  std::vector<LedgerRow> ledger;
  std::vector<std::vector<cplx>> zonal_series;
  std::vector<double> snapshot_times;
  std::vector<SpectralField> snapshots;

  bool valid = true;
  double failure_time = 0.0;
  std::string failure_reason;

  double max_dt = 0.0;
  double min_dt = 0.0;
  std::uint64_t steps = 0;
  double max_boundary_fraction = 0.0;
};

// exp(-dt*lambda) tables are rebuilt only when dt changes between steps, so
// constant-dt runs plan the exponentials once.
class Stepper {
 public:
  Stepper(const GridSpec& grid, const ScalingRegime& regime, const SolverConfig& config);

  // One step with a prescribed dt.  Returns max |u| at the input state
  // (0 for linear-only runs).
  double step(SpectralField& theta, double dt);

  // One step with dt = min(dt_cap, cfl * dx / max|u|), the speed taken from
  // the first stage so the CFL state is never recomputed.  Returns the dt
  // actually taken.
  double step_adaptive(SpectralField& theta, double dt_cap);

  double max_speed(const SpectralField& theta) const;

  const std::vector<cplx>& symbol() const { return lambda_; }

 private:
  GridSpec grid_;
  SolverConfig config_;
  std::vector<cplx> lambda_;
  double dx_min_ = 0.0;
  double cached_dt_ = -1.0;
  std::vector<cplx> efull_, ehalf_;

  void refresh_exponentials(double dt);
  // Fills out with -div(theta u) (the right-hand-side contribution),
  // dealiased per config; returns max |u|.
  double advection(const SpectralField& theta, SpectralField& out) const;
};

// Symbol of the linear part, lambda = nu|xi| + (i/epsilon) xi1/|xi|, with
// lambda(0) = 0 and the dispersive part zeroed on the self-paired x1 Nyquist
// row so that exp(-dt lambda) preserves real fields.
std::vector<cplx> linear_symbol(const GridSpec& grid, const ScalingRegime& regime);

// div(theta u) with u = (-R2 theta, R1 theta), pseudo-spectral, dealiased.
SpectralField nonlinear_term(const SpectralField& theta);

// Advance theta0 to config.t_end, sampling along the way.  On regularity
// loss the trajectory is returned with valid = false and the samples taken
// so far.
Trajectory integrate(const SpectralField& theta0, const ScalingRegime& regime,
                     const SolverConfig& config);

// Fraction of the L2 mass sitting in the outer 10% of the x2 strip.
double boundary_mass_fraction(const SpectralField& theta);

// Initial data family: a mean (x1-independent) Gaussian ridge plus a seeded
// band of x1-oscillating bumps, both independent of epsilon.
struct IllPreparedFamily {
  std::string profile = "default";  // "default" | "zero"
  double amp = 1.0;                 // scales the oscillating part only
  std::uint64_t seed = 1;
  // Optional variant: oscillation amplitude amp * epsilon^eps_power.  Zero
  // keeps the data bitwise independent of epsilon.
  double eps_power = 0.0;
};

struct IllPreparedData {
  SpectralField theta0;
  SpectralField mean_part;         // horizontal mean of theta0
  SpectralField oscillating_part;  // theta0 - mean_part
  double l2_norm = 0.0;
};

// Throws std::runtime_error("insufficient decay near vertical boundary")
// when the profile fails the outer-strip decay requirement.
IllPreparedData make_ill_prepared_data(const GridSpec& grid, const IllPreparedFamily& family,
                                       double epsilon);

}  // namespace sqg
