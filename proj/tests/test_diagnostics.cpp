#include <doctest.h>

#include <cmath>
#include <complex>

#include "sqg/diagnostics.hpp"
#include "sqg/limits.hpp"
#include "sqg/operators.hpp"
#include "sqg/random_fields.hpp"
#include "sqg/solver.hpp"
#include "sqg/transforms.hpp"

using namespace sqg;

namespace {

GridSpec small_grid(int n1 = 32, int n2 = 64) {
  GridSpec g;
  g.n1 = n1;
  g.n2 = n2;
  return g;
}

// Zonal ridge: smooth, mean-free, decays hard inside the strip.
SpectralField zonal_ridge(const GridSpec& g, double amp = 1.0) {
  PhysicalField f(g);
  const double sigma = g.L2 / 8.0;
  double mean = 0.0;
  for (int k = 0; k < g.n2; ++k) {
    const double x2 = g.x2(k);
    mean += std::exp(-x2 * x2 / (2.0 * sigma * sigma));
  }
  mean /= g.n2;
  for (int k = 0; k < g.n2; ++k) {
    const double x2 = g.x2(k);
    const double v = amp * (std::exp(-x2 * x2 / (2.0 * sigma * sigma)) - mean);
    for (int i = 0; i < g.n1; ++i) f.at(i, k) = v;
  }
  return forward_transform(f);
}

SpectralField single_zonal_mode(const GridSpec& g, int m, double amp) {
  SpectralField f(g);
  f.mode(0, m) = cplx(0.5 * amp, 0.0);
  f.mode(0, -m) = cplx(0.5 * amp, 0.0);
  return f;
}

}  // namespace

TEST_CASE("riesz pairing drops out of the quadratic estimate") {
  for (const GridSpec& g : {small_grid(32, 64), small_grid(48, 32)}) {
    RandomFieldOptions opt;
    opt.decay = 1.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      SpectralField theta = random_real_field(g, seed, opt);
      for (double s : {0.0, 0.5, 1.0}) {
        const double pairing = riesz_orthogonality(theta, s);
        const double ref = l2_norm(fractional_laplacian(theta, s));
        CHECK(std::abs(pairing) <= 1e-13 * ref * ref);
      }
    }
  }
}

TEST_CASE("constraint residual separates zonal from oscillating fields") {
  GridSpec g = small_grid();

  SpectralField zero(g);
  CHECK(constraint_residual(zero) == 0.0);

  // zonal fields sit in the kernel of R1 exactly
  CHECK(constraint_residual(zonal_ridge(g)) == 0.0);

  SpectralField mixed = random_real_field(g, 7);
  CHECK(constraint_residual(horizontal_mean(mixed)) == 0.0);

  // cos(x1) is an eigenvector: R1 cos(x1) = sin(x1), same norm
  SpectralField wave(g);
  wave.mode(1, 0) = cplx(0.5, 0.0);
  wave.mode(-1, 0) = cplx(0.5, 0.0);
  CHECK(std::abs(constraint_residual(wave) - 1.0) < 1e-14);

  // mixture: residual is the oscillating mass fraction of cos(x1) + zonal
  SpectralField mix = axpy(1.0, wave, zonal_ridge(g, 1.0));
  const double expect = l2_norm(wave) / l2_norm(mix);
  CHECK(std::abs(constraint_residual(mix) - expect) < 1e-13);
}

TEST_CASE("zonal test function validates and differentiates cleanly") {
  GridSpec g = small_grid(16, 256);
  TestFunction psi = make_zonal_test_function(g, 2.0);
  validate_test_function(psi, g);

  CHECK(psi.temporal(0.0) == doctest::Approx(1.0));
  CHECK(std::abs(psi.temporal(2.0)) < 1e-30);

  // analytic temporal derivative against central differences
  for (double t : {0.3, 0.9, 1.7}) {
    const double h = 1e-6;
    const double fd = (psi.temporal(t + h) - psi.temporal(t - h)) / (2.0 * h);
    CHECK(psi.temporal_dot(t) == doctest::Approx(fd).epsilon(1e-8));
  }

  // analytic spatial derivative against the spectral one (the profile is
  // smooth and compactly supported, so the spectral derivative converges)
  SpectralField b = forward_transform(psi.spatial);
  PhysicalField d2 = inverse_transform(derivative(b, 2));
  double worst = 0.0;
  for (int k = 0; k < g.n2; ++k)
    worst = std::max(worst, std::abs(d2.at(0, k) - psi.spatial_d2.at(0, k)));
  CHECK(worst < 1e-6);

  // support: identically zero on the outer 20% of the strip
  for (int k = 0; k < g.n2; ++k)
    if (std::abs(g.x2(k)) >= 0.8 * g.L2) {
      CHECK(psi.spatial.at(3, k) == 0.0);
      CHECK(psi.spatial_d2.at(3, k) == 0.0);
    }

  // violations are rejected
  TestFunction bad = make_zonal_test_function(g, 2.0);
  bad.spatial.at(1, 0) = 0.5;
  CHECK_THROWS_AS(validate_test_function(bad, g), std::invalid_argument);

  TestFunction leak = make_zonal_test_function(g, 2.0);
  leak.spatial.at(0, 1) = 1e-3;  // x2(1) is deep in the outer band
  CHECK_THROWS_AS(validate_test_function(leak, g), std::invalid_argument);

  TestFunction tail = make_zonal_test_function(g, 2.0);
  tail.temporal = [](double) { return 1.0; };
  CHECK_THROWS_AS(validate_test_function(tail, g), std::invalid_argument);
}

TEST_CASE("weak-form residual vanishes on an exactly solved trajectory") {
  GridSpec g = small_grid(16, 128);
  SpectralField theta0 = zonal_ridge(g, 1.0);

  ScalingRegime reg = ScalingRegime::fixed(0.1, 0.5);
  SolverConfig cfg;
  cfg.t_end = 0.5;
  cfg.dt_max = 1e-3;
  cfg.eps_dt_factor = 0.0;

  Trajectory traj = integrate(theta0, reg, cfg);
  REQUIRE(traj.valid);
  TestFunction psi = make_zonal_test_function(g, cfg.t_end);

  const double scale = std::abs(inner_l2(theta0, forward_transform(psi.spatial)));
  REQUIRE(scale > 1.0);
  const double res = weak_form_residual(traj, psi);
  CHECK(std::abs(res) < 1e-5 * scale);

  // the rotation pairing is structurally zero for x1-independent psi
  const double res_norot = weak_form_residual(traj, psi, false);
  CHECK(res == res_norot);

  // quadrature order: halving the step shrinks the residual ~4x
  cfg.dt_max = 5e-4;
  Trajectory fine = integrate(theta0, reg, cfg);
  const double res_fine = weak_form_residual(fine, psi);
  CHECK(std::abs(res) / std::abs(res_fine) > 3.0);
  CHECK(std::abs(res) / std::abs(res_fine) < 5.5);

  // zero data gives a zero residual identically
  Trajectory zero = integrate(SpectralField(g), reg, cfg);
  CHECK(weak_form_residual(zero, psi) == 0.0);
}

TEST_CASE("weak-form residual stays small with advection active") {
  GridSpec g = small_grid(32, 64);
  IllPreparedFamily fam;
  fam.amp = 0.5;
  SpectralField theta0 = make_ill_prepared_data(g, fam, 0.5).theta0;

  ScalingRegime reg = ScalingRegime::fixed(0.5, 0.5);
  SolverConfig cfg;
  cfg.t_end = 0.25;
  cfg.dt_max = 1e-3;
  cfg.eps_dt_factor = 0.0;

  Trajectory traj = integrate(theta0, reg, cfg);
  REQUIRE(traj.valid);
  TestFunction psi = make_zonal_test_function(g, cfg.t_end);
  const double scale = std::abs(inner_l2(theta0, forward_transform(psi.spatial)));
  CHECK(std::abs(weak_form_residual(traj, psi)) < 1e-4 * scale);
  CHECK(weak_form_residual(traj, psi) == weak_form_residual(traj, psi, false));
}

TEST_CASE("mean-flow balance closes on sampled trajectories") {
  GridSpec g = small_grid(32, 64);

  // zonal heat flow: flux vanishes, residual is pure stencil error
  ScalingRegime reg = ScalingRegime::fixed(0.1, 0.5);
  SolverConfig cfg;
  cfg.t_end = 0.2;
  cfg.dt_max = 2e-3;
  cfg.eps_dt_factor = 0.0;

  Trajectory traj = integrate(zonal_ridge(g, 1.0), reg, cfg);
  REQUIRE(traj.valid);
  MeanResidualReport rep = mean_equation_residual(traj);
  REQUIRE(!rep.rows.empty());
  CHECK(rep.riesz_mean_max == 0.0);
  double worst = 0.0;
  for (const MeanResidualRow& r : rep.rows) worst = std::max(worst, r.residual);
  CHECK(worst < 1e-6);

  // second order in the sampling step
  cfg.dt_max = 1e-3;
  Trajectory fine = integrate(zonal_ridge(g, 1.0), reg, cfg);
  MeanResidualReport frep = mean_equation_residual(fine);
  double fworst = 0.0;
  for (const MeanResidualRow& r : frep.rows) fworst = std::max(fworst, r.residual);
  CHECK(worst / fworst > 3.0);
  CHECK(worst / fworst < 5.5);

  // oscillating data: the flux term engages, balance still closes
  IllPreparedFamily fam;
  fam.amp = 0.5;
  SpectralField theta0 = make_ill_prepared_data(g, fam, 0.5).theta0;
  cfg.dt_max = 1e-3;
  Trajectory mixed = integrate(theta0, ScalingRegime::fixed(0.5, 0.5), cfg);
  REQUIRE(mixed.valid);
  MeanResidualReport mrep = mean_equation_residual(mixed);
  CHECK(mrep.riesz_mean_max == 0.0);
  double mworst = 0.0;
  for (const MeanResidualRow& r : mrep.rows) mworst = std::max(mworst, r.residual);
  CHECK(mworst < 1e-4);

  // too few samples to form a stencil
  cfg.t_end = 1e-3;
  Trajectory stub = integrate(zonal_ridge(g, 1.0), reg, cfg);
  CHECK_THROWS_AS(mean_equation_residual(stub), std::invalid_argument);
}

TEST_CASE("energy ledger accepts clean runs and rejects invalid ones") {
  GridSpec g = small_grid(32, 64);
  ScalingRegime reg = ScalingRegime::fixed(0.25, 0.5);
  SolverConfig cfg;
  cfg.t_end = 0.3;
  cfg.dt_max = 2e-3;
  cfg.eps_dt_factor = 0.0;

  // zero data: zero defect at every sample
  Trajectory zero = integrate(SpectralField(g), reg, cfg);
  for (const EnergyBudgetRow& r : energy_ledger(zero)) {
    CHECK(r.defect == 0.0);
    CHECK(r.pass);
  }

  // heat flow: the trapezoid accumulator tracks the exact balance closely
  Trajectory traj = integrate(zonal_ridge(g, 1.0), reg, cfg);
  CHECK(energy_ledger_ok(traj));
  const std::vector<EnergyBudgetRow> rows = energy_ledger(traj);
  CHECK(rows.back().defect < 1e-6);

  // advective run stays inside the quadratic budget
  IllPreparedFamily fam;
  fam.amp = 0.5;
  Trajectory mixed = integrate(make_ill_prepared_data(g, fam, 0.5).theta0,
                               ScalingRegime::fixed(0.5, 0.5), cfg);
  CHECK(energy_ledger_ok(mixed));

  // invalid trajectories are refused
  SpectralField bad(g);
  bad.coeffs[3] = cplx(std::nan(""), 0.0);
  Trajectory broken = integrate(bad, reg, cfg);
  REQUIRE(!broken.valid);
  CHECK_THROWS_AS(energy_ledger(broken), std::invalid_argument);
}

TEST_CASE("time average matches the closed form for heat decay") {
  GridSpec g = small_grid(16, 64);
  const int m = 3;
  SpectralField theta0 = single_zonal_mode(g, m, 1.0);

  ScalingRegime reg = ScalingRegime::fixed(1.0, 0.5);
  SolverConfig cfg;
  cfg.t_end = 1.0;
  cfg.dt_max = 1e-3;
  cfg.eps_dt_factor = 0.0;

  Trajectory traj = integrate(theta0, reg, cfg);
  SpectralField avg = time_average(traj);

  const double gamma = reg.nu * std::abs(g.xi2(m));
  const double expect = 0.5 * (1.0 - std::exp(-gamma * cfg.t_end)) / (gamma * cfg.t_end);
  CHECK(std::abs(avg.mode(0, m).real() - expect) < 1e-7);
  CHECK(std::abs(avg.mode(0, -m).real() - expect) < 1e-7);
  CHECK(constraint_residual(avg) == 0.0);
}

TEST_CASE("growth report recovers the closed-form accumulation time") {
  GridSpec g = small_grid(16, 64);
  const int m = 4;
  const double amp = 8.0;
  SpectralField theta0 = single_zonal_mode(g, m, amp);

  ScalingRegime reg = ScalingRegime::fixed(1.0, 0.5);
  SolverConfig cfg;
  cfg.t_end = 2.0;
  cfg.dt_max = 1e-3;
  cfg.eps_dt_factor = 0.0;

  Trajectory traj = integrate(theta0, reg, cfg);
  HsGrowthReport rep = hs_growth(traj, 2.5);

  // hs(t) = hs0 exp(-gamma t): the running integral of hs^2 crosses hs0 at
  // t* = -log(1 - 2 gamma / hs0) / (2 gamma) provided hs0 > 2 gamma
  const double gamma = reg.nu * std::abs(g.xi2(m));
  const double hs0 = rep.hs.front();
  REQUIRE(hs0 > 2.0 * gamma);
  const double expect = -std::log(1.0 - 2.0 * gamma / hs0) / (2.0 * gamma);
  REQUIRE(expect < cfg.t_end);
  CHECK(!rep.unbounded);
  CHECK(std::abs(rep.t_star - expect) < 1e-4 * expect);

  // decaying norms never exceed the initial value, so the fitted constant
  // clamps to zero
  CHECK(rep.fitted_c == 0.0);

  // zero data: threshold never crossed, flagged as unbounded
  Trajectory zero = integrate(SpectralField(g), reg, cfg);
  HsGrowthReport zrep = hs_growth(zero, 2.5);
  CHECK(zrep.unbounded);
  CHECK(zrep.t_star == zrep.times.back());
  CHECK(zrep.fitted_c == 0.0);

  CHECK_THROWS_AS(hs_growth(traj, 2.0), std::invalid_argument);
}

TEST_CASE("deviation metric matches the closed form for a frozen limit") {
  GridSpec g = small_grid(16, 128);
  const int m = 5;
  const double amp = 0.8;
  SpectralField theta0 = single_zonal_mode(g, m, amp);

  // combined regime: the limit freezes the mean while the run dissipates it
  ScalingRegime reg = ScalingRegime::combined(0.5, 1.0);
  SolverConfig cfg;
  cfg.t_end = 1.0;
  cfg.dt_max = 1e-3;
  cfg.eps_dt_factor = 0.0;

  Trajectory traj = integrate(theta0, reg, cfg);
  const double dev = deviation_from_limit(traj, 0.5);

  // diff(t, x2) = amp (e^{-gamma t} - 1) cos(xi2(m) x2); integrate the square
  // over the window with the same grid quadrature and a fine time trapezoid
  const double gamma = reg.nu * std::abs(g.xi2(m));
  double space = 0.0;
  for (int k = 0; k < g.n2; ++k) {
    const double x2 = g.x2(k);
    if (std::abs(x2) <= 0.5 * g.L2) {
      const double c = std::cos(g.xi2(m) * x2);
      space += c * c;
    }
  }
  space *= g.L1 * (2.0 * g.L2 / g.n2) * amp * amp;
  const int nq = 20000;
  double tint = 0.0;
  for (int i = 0; i < nq; ++i) {
    const double t0 = cfg.t_end * i / nq, t1 = cfg.t_end * (i + 1) / nq;
    const double f0 = std::pow(std::exp(-gamma * t0) - 1.0, 2);
    const double f1 = std::pow(std::exp(-gamma * t1) - 1.0, 2);
    tint += 0.5 * (t1 - t0) * (f0 + f1);
  }
  const double expect = std::sqrt(space * tint);
  CHECK(dev == doctest::Approx(expect).epsilon(1e-5));
}

TEST_CASE("convergence report enforces sweep shape and degenerates cleanly") {
  GridSpec g = small_grid(32, 64);
  SpectralField theta0 = zonal_ridge(g, 1.0);

  SolverConfig cfg;
  cfg.t_end = 0.3;
  cfg.dt_max = 2e-3;
  cfg.eps_dt_factor = 0.0;

  // zonal data never feels the rotation term, so every member sits on the
  // limit up to quadrature error
  std::vector<Trajectory> sweep;
  for (double eps : {0.4, 0.2, 0.1})
    sweep.push_back(integrate(theta0, ScalingRegime::fixed(eps, 0.5), cfg));
  ConvergenceReport rep = convergence_metric(sweep);
  REQUIRE(rep.deviations.size() == 3);
  const double scale = l2_norm(theta0) * std::sqrt(cfg.t_end);
  for (double d : rep.deviations) CHECK(d < 1e-6 * scale);
  CHECK(rep.epsilons == std::vector<double>{0.4, 0.2, 0.1});
  CHECK(rep.norm_id == "L2_time_L2_strip");

  // epsilons must strictly decrease
  std::vector<Trajectory> bad;
  bad.push_back(integrate(theta0, ScalingRegime::fixed(0.2, 0.5), cfg));
  bad.push_back(integrate(theta0, ScalingRegime::fixed(0.2, 0.5), cfg));
  CHECK_THROWS_AS(convergence_metric(bad), std::invalid_argument);

  // the metric is stable under time-step refinement
  IllPreparedFamily fam;
  fam.amp = 0.5;
  SpectralField mixed0 = make_ill_prepared_data(g, fam, 0.25).theta0;
  Trajectory coarse = integrate(mixed0, ScalingRegime::fixed(0.25, 0.5), cfg);
  cfg.dt_max = 1e-3;
  Trajectory fine = integrate(mixed0, ScalingRegime::fixed(0.25, 0.5), cfg);
  const double dc = deviation_from_limit(coarse);
  const double df = deviation_from_limit(fine);
  REQUIRE(df > 0.0);
  CHECK(std::abs(dc - df) / df < 0.01);
}
