#include "sqg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sqg/lp.hpp"
#include "sqg/operators.hpp"
#include "sqg/transforms.hpp"

namespace sqg {
namespace {

void require_valid(const Trajectory& traj, const char* where) {
  if (!traj.valid)
    throw std::invalid_argument(std::string(where) +
                                ": trajectory is invalid (" + traj.failure_reason + ")");
  if (traj.ledger.empty())
    throw std::invalid_argument(std::string(where) + ": trajectory has no samples");
}

void require_snapshots(const Trajectory& traj, const char* where) {
  if (traj.snapshots.size() != traj.ledger.size())
    throw std::invalid_argument(std::string(where) + ": snapshots missing");
}

// Dealiased spectral product theta * u2, the flux whose x2 derivative feeds
// the horizontal-mean balance.
SpectralField vertical_flux(const SpectralField& theta) {
  const PhysicalField ptheta = inverse_transform(theta);
  const PhysicalField pu2 = inverse_transform(riesz(theta, 1));
  PhysicalField prod(theta.grid);
  for (size_t i = 0; i < prod.values.size(); ++i)
    prod.values[i] = ptheta.values[i] * pu2.values[i];
  return dealias(forward_transform(prod));
}

// Zonal column synthesized at the x2 collocation points by direct mode
// summation (cheaper than a 2-d transform when only the column is known).
std::vector<double> zonal_grid_values(const GridSpec& grid,
                                      const std::vector<cplx>& coeffs) {
  if (static_cast<int>(coeffs.size()) != grid.n2)
    throw std::invalid_argument("zonal column size does not match grid");
  std::vector<double> out(grid.n2, 0.0);
  for (int k = 0; k < grid.n2; ++k) {
    const double x2 = grid.x2(k);
    double v = 0.0;
    for (int kk = 0; kk < grid.n2; ++kk) {
      const double phase = grid.xi2(grid.mfreq(kk)) * x2;
      v += coeffs[kk].real() * std::cos(phase) - coeffs[kk].imag() * std::sin(phase);
    }
    out[k] = v;
  }
  return out;
}

}  // namespace

std::vector<EnergyBudgetRow> energy_ledger(const Trajectory& traj) {
  require_valid(traj, "energy_ledger");
  const double dt = traj.max_dt;
  const double scale = traj.ledger.front().l2 * traj.ledger.front().l2;
  std::vector<EnergyBudgetRow> rows;
  rows.reserve(traj.ledger.size());
  for (const LedgerRow& r : traj.ledger) {
    EnergyBudgetRow row;
    row.t = r.t;
    row.defect = r.energy_defect;
    row.budget = 10.0 * dt * dt * std::max(r.t, dt) * std::max(scale, 1.0);
    row.pass = row.defect <= row.budget;
    rows.push_back(row);
  }
  return rows;
}

bool energy_ledger_ok(const Trajectory& traj) {
  for (const EnergyBudgetRow& r : energy_ledger(traj))
    if (!r.pass) return false;
  return true;
}

double riesz_orthogonality(const SpectralField& theta, double s) {
  const SpectralField a = fractional_laplacian(riesz(theta, 1), s);
  const SpectralField b = fractional_laplacian(theta, s);
  return inner_l2(a, b);
}

MeanResidualReport mean_equation_residual(const Trajectory& traj) {
  require_valid(traj, "mean_equation_residual");
  require_snapshots(traj, "mean_equation_residual");
  const size_t n = traj.ledger.size();
  if (n < 3)
    throw std::invalid_argument("mean_equation_residual: needs at least 3 samples");
  const GridSpec& grid = traj.grid;
  const double nu = traj.regime.nu;

  // zonal flux-divergence column and zonal mean column per sample
  std::vector<std::vector<cplx>> flux_div(n);
  for (size_t i = 0; i < n; ++i) {
    const SpectralField d2flux = derivative(vertical_flux(traj.snapshots[i]), 2);
    std::vector<cplx> col(grid.n2);
    for (int k = 0; k < grid.n2; ++k) col[k] = d2flux.at(0, k);
    flux_div[i] = std::move(col);
  }

  MeanResidualReport report;
  for (size_t i = 0; i < n; ++i) {
    const SpectralField rmean = horizontal_mean(riesz(traj.snapshots[i], 1));
    for (int k = 0; k < grid.n2; ++k)
      report.riesz_mean_max = std::max(report.riesz_mean_max, std::abs(rmean.at(0, k)));
  }

  for (size_t i = 1; i + 1 < n; ++i) {
    const double hm = traj.ledger[i].t - traj.ledger[i - 1].t;
    const double hp = traj.ledger[i + 1].t - traj.ledger[i].t;
    // three-point first derivative, exact on quadratics in t
    const double wm = -hp / (hm * (hm + hp));
    const double w0 = (hp - hm) / (hm * hp);
    const double wp = hm / (hp * (hm + hp));

    double sum2 = 0.0;
    for (int k = 0; k < grid.n2; ++k) {
      const cplx ddt = wm * traj.zonal_series[i - 1][k] +
                       w0 * traj.zonal_series[i][k] +
                       wp * traj.zonal_series[i + 1][k];
      const double absxi2 = std::abs(grid.xi2(grid.mfreq(k)));
      const cplx res = ddt + flux_div[i][k] + nu * absxi2 * traj.zonal_series[i][k];
      sum2 += std::norm(res);
    }
    MeanResidualRow row;
    row.t = traj.ledger[i].t;
    row.residual = std::sqrt(grid.domain_area() * sum2);
    report.rows.push_back(row);
  }
  return report;
}

TestFunction make_zonal_test_function(const GridSpec& grid, double t_end) {
  if (!(t_end > 0.0))
    throw std::invalid_argument("test function horizon must be positive");
  const double R = 0.75 * grid.L2;
  TestFunction psi;
  psi.spatial = PhysicalField(grid);
  psi.spatial_d2 = PhysicalField(grid);
  for (int k = 0; k < grid.n2; ++k) {
    const double x2 = grid.x2(k);
    const double r = x2 / R;
    double b = 0.0, db = 0.0;
    if (std::abs(r) < 1.0) {
      const double q = 1.0 - r * r;
      b = std::exp(1.0 - 1.0 / q);
      db = b * (-2.0 * r / (R * q * q));
    }
    for (int i = 0; i < grid.n1; ++i) {
      psi.spatial.at(i, k) = b;
      psi.spatial_d2.at(i, k) = db;
    }
  }
  psi.t_end = t_end;
  psi.temporal = [t_end](double t) {
    const double c = std::cos(kPi * t / (2.0 * t_end));
    return c * c;
  };
  psi.temporal_dot = [t_end](double t) {
    return -(kPi / (2.0 * t_end)) * std::sin(kPi * t / t_end);
  };
  return psi;
}

void validate_test_function(const TestFunction& psi, const GridSpec& grid) {
  require_same_grid(psi.spatial.grid, grid, "validate_test_function");
  require_same_grid(psi.spatial_d2.grid, grid, "validate_test_function");
  if (!(psi.t_end > 0.0))
    throw std::invalid_argument("test function horizon must be positive");
  for (int k = 0; k < grid.n2; ++k) {
    const double v0 = psi.spatial.at(0, k);
    const double d0 = psi.spatial_d2.at(0, k);
    for (int i = 1; i < grid.n1; ++i)
      if (psi.spatial.at(i, k) != v0 || psi.spatial_d2.at(i, k) != d0)
        throw std::invalid_argument("test function must be x1-independent");
    if (std::abs(grid.x2(k)) >= 0.8 * grid.L2 && (v0 != 0.0 || d0 != 0.0))
      throw std::invalid_argument("test function must vanish on the outer 20% of the strip");
  }
  const double a0 = std::abs(psi.temporal(0.0));
  if (std::abs(psi.temporal(psi.t_end)) > 1e-12 * std::max(1.0, a0))
    throw std::invalid_argument("test function must vanish at the final time");
}

double weak_form_residual(const Trajectory& traj, const TestFunction& psi,
                          bool include_rotation_term) {
  require_valid(traj, "weak_form_residual");
  require_snapshots(traj, "weak_form_residual");
  validate_test_function(psi, traj.grid);
  const size_t n = traj.ledger.size();
  if (n < 2)
    throw std::invalid_argument("weak_form_residual: needs at least 2 samples");
  if (std::abs(psi.t_end - traj.ledger.back().t) > 1e-9 * std::max(1.0, psi.t_end))
    throw std::invalid_argument("test function horizon does not match the trajectory");

  const SpectralField b = forward_transform(psi.spatial);
  const SpectralField bd2 = forward_transform(psi.spatial_d2);
  const SpectralField bhalf = fractional_laplacian(b, 0.5);
  const double nu = traj.regime.nu;
  const double inv_eps = 1.0 / traj.regime.epsilon;

  // pointwise-in-time integrands, then one trapezoid pass
  std::vector<double> f(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    const SpectralField& th = traj.snapshots[i];
    const double t = traj.ledger[i].t;
    const double a = psi.temporal(t);
    const double adot = psi.temporal_dot(t);
    double v = -adot * inner_l2(th, b);
    v -= a * inner_l2(vertical_flux(th), bd2);
    v += nu * a * inner_l2(fractional_laplacian(th, 0.5), bhalf);
    if (include_rotation_term) v += inv_eps * a * inner_l2(riesz(th, 1), b);
    f[i] = v;
  }

  double integral = 0.0;
  for (size_t i = 0; i + 1 < n; ++i)
    integral += 0.5 * (traj.ledger[i + 1].t - traj.ledger[i].t) * (f[i] + f[i + 1]);

  return integral - psi.temporal(0.0) * inner_l2(traj.snapshots.front(), b);
}

double constraint_residual(const SpectralField& g) {
  const double n = l2_norm(g);
  if (n == 0.0) return 0.0;
  return l2_norm(riesz(g, 1)) / n;
}

SpectralField time_average(const Trajectory& traj) {
  require_valid(traj, "time_average");
  require_snapshots(traj, "time_average");
  const size_t n = traj.ledger.size();
  if (n < 2)
    throw std::invalid_argument("time_average: needs at least 2 samples");
  SpectralField avg(traj.grid);
  const double span = traj.ledger.back().t - traj.ledger.front().t;
  for (size_t i = 0; i + 1 < n; ++i) {
    const double w = 0.5 * (traj.ledger[i + 1].t - traj.ledger[i].t) / span;
    for (size_t c = 0; c < avg.coeffs.size(); ++c)
      avg.coeffs[c] += w * (traj.snapshots[i].coeffs[c] + traj.snapshots[i + 1].coeffs[c]);
  }
  return avg;
}

HsGrowthReport hs_growth(const Trajectory& traj, double s) {
  if (!(s > 2.0))
    throw std::invalid_argument("hs_growth requires s > 2");
  require_valid(traj, "hs_growth");
  require_snapshots(traj, "hs_growth");
  const size_t n = traj.ledger.size();
  if (n < 2)
    throw std::invalid_argument("hs_growth: needs at least 2 samples");

  const DyadicFamily fam(traj.grid);
  HsGrowthReport rep;
  rep.s = s;
  rep.times.resize(n);
  rep.hs.resize(n);
  rep.accumulated.resize(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    rep.times[i] = traj.ledger[i].t;
    rep.hs[i] = lp_sobolev_norm(fam, traj.snapshots[i], s);
  }
  for (size_t i = 1; i < n; ++i) {
    const double dt = rep.times[i] - rep.times[i - 1];
    rep.accumulated[i] = rep.accumulated[i - 1] +
                         0.5 * dt * (rep.hs[i - 1] * rep.hs[i - 1] + rep.hs[i] * rep.hs[i]);
  }

  const double threshold = rep.hs[0];
  rep.t_star = rep.times.back();
  rep.unbounded = true;
  for (size_t i = 1; i < n; ++i) {
    if (rep.accumulated[i] > threshold) {
      const double a0 = rep.accumulated[i - 1], a1 = rep.accumulated[i];
      const double frac = (threshold - a0) / (a1 - a0);
      rep.t_star = rep.times[i - 1] + frac * (rep.times[i] - rep.times[i - 1]);
      rep.unbounded = false;
      break;
    }
  }

  double c = 0.0;
  for (size_t i = 1; i < n; ++i)
    if (rep.accumulated[i] > 0.0)
      c = std::max(c, (rep.hs[i] - rep.hs[0]) / rep.accumulated[i]);
  rep.fitted_c = c;
  return rep;
}

double deviation_from_limit(const Trajectory& traj, double window_fraction) {
  require_valid(traj, "deviation_from_limit");
  if (!(window_fraction > 0.0) || window_fraction > 1.0)
    throw std::invalid_argument("window fraction must lie in (0, 1]");
  if (traj.zonal_series.size() != traj.ledger.size())
    throw std::invalid_argument("deviation_from_limit: zonal series missing");
  const size_t n = traj.ledger.size();
  if (n < 2)
    throw std::invalid_argument("deviation_from_limit: needs at least 2 samples");
  const GridSpec& grid = traj.grid;
  const ZonalProfile p0 = zonal_from_column(grid, traj.zonal_series.front());

  const double dx2 = 2.0 * grid.L2 / grid.n2;
  const double half_window = window_fraction * grid.L2;
  std::vector<double> strip(n, 0.0);
  std::vector<cplx> diff(grid.n2);
  for (size_t i = 0; i < n; ++i) {
    const double t = traj.ledger[i].t;
    const ZonalProfile limit = traj.regime.kind == RegimeKind::Fixed
                                   ? evolve_fast_rotation_limit(p0, traj.regime.nu, t)
                                   : evolve_combined_limit(p0, t);
    for (int k = 0; k < grid.n2; ++k)
      diff[k] = traj.zonal_series[i][k] - limit.coeffs[k];
    const std::vector<double> vals = zonal_grid_values(grid, diff);
    double sum2 = 0.0;
    for (int k = 0; k < grid.n2; ++k)
      if (std::abs(grid.x2(k)) <= half_window) sum2 += vals[k] * vals[k];
    strip[i] = grid.L1 * dx2 * sum2;
  }

  double integral = 0.0;
  for (size_t i = 0; i + 1 < n; ++i)
    integral += 0.5 * (traj.ledger[i + 1].t - traj.ledger[i].t) * (strip[i] + strip[i + 1]);
  return std::sqrt(integral);
}

ConvergenceReport convergence_metric(const std::vector<Trajectory>& sweep,
                                     double window_fraction) {
  if (sweep.empty())
    throw std::invalid_argument("convergence_metric: empty sweep");
  const GridSpec& grid = sweep.front().grid;
  const RegimeKind kind = sweep.front().regime.kind;
  const double t_end = sweep.front().config.t_end;
  for (const Trajectory& traj : sweep) {
    require_same_grid(traj.grid, grid, "convergence_metric");
    if (traj.regime.kind != kind)
      throw std::invalid_argument("convergence_metric: mixed regime kinds");
    if (std::abs(traj.config.t_end - t_end) > 1e-12 * std::max(1.0, t_end))
      throw std::invalid_argument("convergence_metric: mixed horizons");
  }
  for (size_t i = 1; i < sweep.size(); ++i)
    if (!(sweep[i].regime.epsilon < sweep[i - 1].regime.epsilon))
      throw std::invalid_argument("sweep epsilons must be strictly decreasing");

  ConvergenceReport rep;
  rep.t_end = t_end;
  rep.window_fraction = window_fraction;
  for (const Trajectory& traj : sweep) {
    rep.epsilons.push_back(traj.regime.epsilon);
    rep.deviations.push_back(deviation_from_limit(traj, window_fraction));
  }
  rep.strictly_decreasing = rep.deviations.size() >= 2;
  for (size_t i = 1; i < rep.deviations.size(); ++i)
    if (!(rep.deviations[i] < rep.deviations[i - 1])) rep.strictly_decreasing = false;
  return rep;
}

}  // namespace sqg
