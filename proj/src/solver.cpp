#include "sqg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "sqg/lp.hpp"
#include "sqg/operators.hpp"
#include "sqg/transforms.hpp"

namespace sqg {

namespace {

void validate_regime(const ScalingRegime& r) {
  if (!(r.epsilon > 0.0) || !std::isfinite(r.epsilon))
    throw std::invalid_argument("regime requires positive epsilon");
  if (!(r.nu > 0.0) || !std::isfinite(r.nu))
    throw std::invalid_argument("regime requires positive nu");
  if (r.kind == RegimeKind::Combined && (!(r.alpha > 0.0) || r.alpha > 1.0))
    throw std::invalid_argument("combined regime requires alpha in (0, 1]");
}

bool all_finite(const SpectralField& g) {
  for (const cplx& c : g.coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

// Pseudo-spectral div(theta u); reports max pointwise speed through *speed.
SpectralField advection_term(const SpectralField& theta, bool do_dealias, double* speed) {
  auto [u1hat, u2hat] = velocity_from_theta(theta);
  PhysicalField th = inverse_transform(theta);
  PhysicalField u1 = inverse_transform(u1hat);
  PhysicalField u2 = inverse_transform(u2hat);

  PhysicalField m1(theta.grid);
  PhysicalField m2(theta.grid);
  double vmax = 0.0;
  for (std::size_t i = 0; i < th.values.size(); ++i) {
    vmax = std::max(vmax, std::hypot(u1.values[i], u2.values[i]));
    m1.values[i] = th.values[i] * u1.values[i];
    m2.values[i] = th.values[i] * u2.values[i];
  }
  if (speed) *speed = vmax;

  SpectralField f1 = derivative(forward_transform(m1), 1);
  SpectralField f2 = derivative(forward_transform(m2), 2);
  for (std::size_t i = 0; i < f1.coeffs.size(); ++i) f1.coeffs[i] += f2.coeffs[i];
  return do_dealias ? dealias(f1) : f1;
}

double l2sq(double x) { return x * x; }

}  // namespace

ScalingRegime ScalingRegime::fixed(double epsilon, double nu) {
  ScalingRegime r;
  r.kind = RegimeKind::Fixed;
  r.epsilon = epsilon;
  r.nu = nu;
  validate_regime(r);
  return r;
}

ScalingRegime ScalingRegime::combined(double epsilon, double alpha) {
  ScalingRegime r;
  r.kind = RegimeKind::Combined;
  r.epsilon = epsilon;
  r.alpha = alpha;
  r.nu = std::pow(epsilon, alpha);
  validate_regime(r);
  return r;
}

void SolverConfig::validate() const {
  if (!(dt_max > 0.0) || !std::isfinite(dt_max))
    throw std::invalid_argument("dt_max must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw std::invalid_argument("t_end must be positive");
  if (!(cfl > 0.0) || cfl > 1.0) throw std::invalid_argument("cfl must lie in (0, 1]");
  if (sample_every < 1) throw std::invalid_argument("sample_every must be at least 1");
  if (!std::isfinite(eps_dt_factor)) throw std::invalid_argument("eps_dt_factor must be finite");
}

std::vector<cplx> linear_symbol(const GridSpec& grid, const ScalingRegime& regime) {
  validate_regime(regime);
  std::vector<cplx> lambda(static_cast<std::size_t>(grid.n1) * grid.n2);
  for (int k = 0; k < grid.n2; ++k) {
    for (int i = 0; i < grid.n1; ++i) {
      const int j = grid.jfreq(i);
      const double x1 = grid.xi1(j);
      const double x2 = grid.xi2(grid.mfreq(k));
      const double r = std::hypot(x1, x2);
      if (r == 0.0) continue;
      // The x1 Nyquist column is self-paired, so an odd-in-xi1 phase there
      // would break conjugate symmetry; drop it (the column is dealiased
      // away in nonlinear runs anyway).
      const double im = (j == -grid.n1 / 2) ? 0.0 : x1 / (regime.epsilon * r);
      lambda[grid.idx(i, k)] = cplx(regime.nu * r, im);
    }
  }
  return lambda;
}

SpectralField nonlinear_term(const SpectralField& theta) {
  return advection_term(theta, true, nullptr);
}

Stepper::Stepper(const GridSpec& grid, const ScalingRegime& regime, const SolverConfig& config)
    : grid_(grid), config_(config), lambda_(linear_symbol(grid, regime)) {
  grid.validate();
  config.validate();
  dx_min_ = std::min(grid.L1 / grid.n1, 2.0 * grid.L2 / grid.n2);
  efull_.resize(lambda_.size());
  ehalf_.resize(lambda_.size());
}

void Stepper::refresh_exponentials(double dt) {
  if (dt == cached_dt_) return;
  for (std::size_t i = 0; i < lambda_.size(); ++i) {
    efull_[i] = std::exp(-dt * lambda_[i]);
    ehalf_[i] = std::exp(-0.5 * dt * lambda_[i]);
  }
  cached_dt_ = dt;
}

double Stepper::advection(const SpectralField& theta, SpectralField& out) const {
  double speed = 0.0;
  out = advection_term(theta, config_.dealias, &speed);
  // The integrator wants the right-hand-side contribution -div(theta u).
  for (cplx& c : out.coeffs) c = -c;
  return speed;
}

double Stepper::max_speed(const SpectralField& theta) const {
  auto [u1hat, u2hat] = velocity_from_theta(theta);
  PhysicalField u1 = inverse_transform(u1hat);
  PhysicalField u2 = inverse_transform(u2hat);
  double vmax = 0.0;
  for (std::size_t i = 0; i < u1.values.size(); ++i)
    vmax = std::max(vmax, std::hypot(u1.values[i], u2.values[i]));
  return vmax;
}

namespace {

// One configured step with the first-stage right-hand side already in hand.
template <class Rhs>
void apply_stages(SpectralField& theta, double dt, const SpectralField& a,
                  const SolverConfig& config, const std::vector<cplx>& efull,
                  const std::vector<cplx>& ehalf, Rhs&& rhs) {
  const std::size_t n = theta.coeffs.size();
  if (config.integrator == TimeIntegrator::IFRK2) {
    SpectralField stage(theta.grid);
    for (std::size_t i = 0; i < n; ++i)
      stage.coeffs[i] = efull[i] * (theta.coeffs[i] + dt * a.coeffs[i]);
    SpectralField b(theta.grid);
    rhs(stage, b);
    for (std::size_t i = 0; i < n; ++i)
      theta.coeffs[i] =
          efull[i] * theta.coeffs[i] + 0.5 * dt * (efull[i] * a.coeffs[i] + b.coeffs[i]);
    return;
  }

  SpectralField stage(theta.grid);
  for (std::size_t i = 0; i < n; ++i)
    stage.coeffs[i] = ehalf[i] * (theta.coeffs[i] + 0.5 * dt * a.coeffs[i]);
  SpectralField b(theta.grid);
  rhs(stage, b);

  for (std::size_t i = 0; i < n; ++i)
    stage.coeffs[i] = ehalf[i] * theta.coeffs[i] + 0.5 * dt * b.coeffs[i];
  SpectralField c(theta.grid);
  rhs(stage, c);

  for (std::size_t i = 0; i < n; ++i)
    stage.coeffs[i] = efull[i] * theta.coeffs[i] + dt * ehalf[i] * c.coeffs[i];
  SpectralField d(theta.grid);
  rhs(stage, d);

  for (std::size_t i = 0; i < n; ++i)
    theta.coeffs[i] = efull[i] * theta.coeffs[i] +
                      dt / 6.0 *
                          (efull[i] * a.coeffs[i] +
                           2.0 * ehalf[i] * (b.coeffs[i] + c.coeffs[i]) + d.coeffs[i]);
}

}  // namespace

double Stepper::step(SpectralField& theta, double dt) {
  require_same_grid(grid_, theta.grid, "step");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("step requires positive dt");
  refresh_exponentials(dt);
  if (config_.linear_only) {
    for (std::size_t i = 0; i < theta.coeffs.size(); ++i) theta.coeffs[i] *= efull_[i];
    return 0.0;
  }
  SpectralField a(grid_);
  const double speed = advection(theta, a);
  auto rhs = [this](const SpectralField& in, SpectralField& out) { advection(in, out); };
  apply_stages(theta, dt, a, config_, efull_, ehalf_, rhs);
  return speed;
}

double Stepper::step_adaptive(SpectralField& theta, double dt_cap) {
  require_same_grid(grid_, theta.grid, "step_adaptive");
  if (!(dt_cap > 0.0) || !std::isfinite(dt_cap))
    throw std::invalid_argument("step_adaptive requires a positive dt cap");
  if (config_.linear_only) {
    refresh_exponentials(dt_cap);
    for (std::size_t i = 0; i < theta.coeffs.size(); ++i) theta.coeffs[i] *= efull_[i];
    return dt_cap;
  }
  SpectralField a(grid_);
  const double speed = advection(theta, a);
  double dt = dt_cap;
  if (speed > 0.0) dt = std::min(dt, config_.cfl * dx_min_ / speed);
  refresh_exponentials(dt);
  auto rhs = [this](const SpectralField& in, SpectralField& out) { advection(in, out); };
  apply_stages(theta, dt, a, config_, efull_, ehalf_, rhs);
  return dt;
}

Trajectory integrate(const SpectralField& theta0, const ScalingRegime& regime,
                     const SolverConfig& config) {
  theta0.grid.validate();
  config.validate();
  validate_regime(regime);

  Trajectory traj;
  traj.grid = theta0.grid;
  traj.regime = regime;
  traj.config = config;

  SpectralField theta = config.dealias ? dealias(theta0) : theta0;
  Stepper stepper(theta0.grid, regime, config);
  DyadicFamily family(theta0.grid);

  const GridSpec& g = theta0.grid;

  double dt_static = config.dt_max;
  if (config.eps_dt_factor > 0.0)
    dt_static = std::min(dt_static, config.eps_dt_factor * regime.epsilon);

  const double l2_initial_sq = l2sq(l2_norm(theta));
  double dissipated = 0.0;
  double hh_prev_sq = l2sq(hhalf_seminorm(theta));

  double t = 0.0;
  traj.min_dt = std::numeric_limits<double>::infinity();

  auto sample = [&](double time) {
    LedgerRow row;
    row.t = time;
    row.l2 = l2_norm(theta);
    row.hhalf = hhalf_seminorm(theta);
    row.hs = lp_sobolev_norm(family, theta, kLedgerSobolevIndex);
    row.energy_defect = std::abs(l2sq(row.l2) + 2.0 * regime.nu * dissipated - l2_initial_sq);
    row.boundary_fraction = boundary_mass_fraction(theta);
    traj.max_boundary_fraction = std::max(traj.max_boundary_fraction, row.boundary_fraction);
    traj.ledger.push_back(row);
    std::vector<cplx> zonal(g.n2);
    for (int k = 0; k < g.n2; ++k) zonal[k] = theta.at(0, k);
    traj.zonal_series.push_back(std::move(zonal));
    traj.snapshot_times.push_back(time);
    traj.snapshots.push_back(theta);
  };
  sample(0.0);

  auto fail = [&](const char* reason, double when) {
    traj.valid = false;
    traj.failure_time = when;
    traj.failure_reason = reason;
  };

  const double t_tol = 1e-12 * config.t_end;
  while (config.t_end - t > t_tol) {
    const double cap = std::min(dt_static, config.t_end - t);
    double dt = 0.0;
    try {
      dt = stepper.step_adaptive(theta, cap);
    } catch (const std::exception&) {
      // transforms refuse non-finite values mid-step; the state at t is the
      // last finite one
      fail("solution lost regularity", t);
      break;
    }
    if (dt < cap && dt < 1e-12 * dt_static) {
      fail("time step underflow", t);
      break;
    }
    if (!all_finite(theta)) {
      fail("solution lost regularity", t);
      break;
    }
    ++traj.steps;
    t += dt;
    traj.max_dt = std::max(traj.max_dt, dt);
    traj.min_dt = std::min(traj.min_dt, dt);

    const double hh_sq = l2sq(hhalf_seminorm(theta));
    dissipated += 0.5 * dt * (hh_prev_sq + hh_sq);
    hh_prev_sq = hh_sq;

    if (config.t_end - t <= t_tol || traj.steps % static_cast<std::uint64_t>(config.sample_every) == 0)
      sample(t);
  }
  if (traj.steps == 0) traj.min_dt = 0.0;
  return traj;
}

double boundary_mass_fraction(const SpectralField& theta) {
  PhysicalField p = inverse_transform(theta);
  const GridSpec& g = theta.grid;
  double outer = 0.0, total = 0.0;
  for (int k = 0; k < g.n2; ++k) {
    const bool is_outer = std::abs(g.x2(k)) >= 0.9 * g.L2;
    for (int i = 0; i < g.n1; ++i) {
      const double v2 = p.at(i, k) * p.at(i, k);
      total += v2;
      if (is_outer) outer += v2;
    }
  }
  return total > 0.0 ? outer / total : 0.0;
}

IllPreparedData make_ill_prepared_data(const GridSpec& grid, const IllPreparedFamily& family,
                                       double epsilon) {
  grid.validate();
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("data family requires positive epsilon");
  if (!(family.amp >= 0.0) || !std::isfinite(family.amp))
    throw std::invalid_argument("data family requires non-negative amp");
  if (family.eps_power < 0.0) throw std::invalid_argument("eps_power must be non-negative");
  if (family.profile != "default" && family.profile != "zero")
    throw std::invalid_argument("unknown data profile: " + family.profile);

  IllPreparedData out;

  if (family.profile == "zero") {
    out.theta0 = SpectralField(grid);
    out.mean_part = out.theta0;
    out.oscillating_part = out.theta0;
    out.l2_norm = 0.0;
    return out;
  }

  // Mean ridge: width L2/8 keeps the outer 10% of the strip below 1e-11
  // in relative magnitude.
  const double sigma0 = grid.L2 / 8.0;
  std::vector<double> mean_row(grid.n2);
  for (int k = 0; k < grid.n2; ++k) {
    const double x2 = grid.x2(k);
    mean_row[k] = 0.5 * std::exp(-x2 * x2 / (2.0 * sigma0 * sigma0));
  }

  // Oscillating part: four x1 cosine bumps with seeded wavenumbers, phases,
  // centres and widths, normalized to peak 0.5 before amp is applied.
  std::mt19937_64 eng(family.seed);
  auto uniform01 = [&eng]() { return (eng() >> 11) * 0x1.0p-53; };
  struct Bump {
    int j;
    double phase, centre, width, amp;
  };
  std::vector<Bump> bumps(4);
  for (Bump& b : bumps) {
    b.j = 1 + static_cast<int>(uniform01() * 3.0);
    b.phase = 2.0 * kPi * uniform01();
    b.centre = (2.0 * uniform01() - 1.0) * grid.L2 / 10.0;
    b.width = grid.L2 / 12.0 + uniform01() * (grid.L2 / 10.0 - grid.L2 / 12.0);
    b.amp = 0.5 + 0.5 * uniform01();
  }

  PhysicalField osc(grid);
  double osc_max = 0.0;
  for (int k = 0; k < grid.n2; ++k) {
    const double x2 = grid.x2(k);
    for (int i = 0; i < grid.n1; ++i) {
      const double x1 = grid.x1(i);
      double v = 0.0;
      for (const Bump& b : bumps) {
        const double d = x2 - b.centre;
        v += b.amp * std::cos(b.j * (2.0 * kPi / grid.L1) * x1 + b.phase) *
             std::exp(-d * d / (2.0 * b.width * b.width));
      }
      osc.at(i, k) = v;
      osc_max = std::max(osc_max, std::abs(v));
    }
  }

  double amp_eff = family.amp;
  if (family.eps_power > 0.0) amp_eff *= std::pow(epsilon, family.eps_power);
  const double scale = osc_max > 0.0 ? amp_eff * 0.5 / osc_max : 0.0;

  PhysicalField full(grid);
  double vmax = 0.0;
  for (int k = 0; k < grid.n2; ++k)
    for (int i = 0; i < grid.n1; ++i) {
      full.at(i, k) = mean_row[k] + scale * osc.at(i, k);
      vmax = std::max(vmax, std::abs(full.at(i, k)));
    }

  double outer_max = 0.0;
  for (int k = 0; k < grid.n2; ++k) {
    if (std::abs(grid.x2(k)) < 0.9 * grid.L2) continue;
    for (int i = 0; i < grid.n1; ++i) outer_max = std::max(outer_max, std::abs(full.at(i, k)));
  }
  if (outer_max > 1e-8 * vmax)
    throw std::runtime_error("insufficient decay near vertical boundary");

  out.theta0 = forward_transform(full);
  out.mean_part = horizontal_mean(out.theta0);
  out.oscillating_part = out.theta0;
  for (int k = 0; k < grid.n2; ++k)
    out.oscillating_part.at(0, k) -= out.mean_part.at(0, k);
  out.l2_norm = l2_norm(out.theta0);
  return out;
}

}  // namespace sqg
