#include "sqg/verify.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "sqg/diagnostics.hpp"
#include "sqg/limits.hpp"
#include "sqg/lp.hpp"
#include "sqg/operators.hpp"
#include "sqg/random_fields.hpp"
#include "sqg/solver.hpp"
#include "sqg/transforms.hpp"

namespace sqg {
namespace {

VerifyCheck check(const std::string& name, double measured, double bound) {
  return {name, measured, bound, measured <= bound};
}

double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    worst = std::max(worst, std::abs(a.coeffs[i] - b.coeffs[i]));
  return worst;
}

SpectralField verify_state(const GridSpec& g, std::uint64_t seed) {
  RandomFieldOptions opt;
  opt.decay = 2.0;
  return random_real_field(g, seed, opt);
}

}  // namespace

std::vector<VerifyCheck> verify_core_suite() {
  const GridSpec g(48, 64);
  std::vector<VerifyCheck> out;

  // transform round trip on a random physical state
  {
    PhysicalField f = inverse_transform(verify_state(g, 11));
    PhysicalField back = inverse_transform(forward_transform(f));
    double worst = 0.0, scale = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i) {
      worst = std::max(worst, std::abs(back.values[i] - f.values[i]));
      scale = std::max(scale, std::abs(f.values[i]));
    }
    out.push_back(check("transform_round_trip", worst / scale, 1e-12));
  }

  // Parseval: spectral and physical L2 norms agree
  {
    SpectralField f = verify_state(g, 12);
    const double a = l2_norm(f), b = l2_norm(inverse_transform(f));
    out.push_back(check("parseval", std::abs(a - b) / a, 1e-12));
  }

  // R1^2 + R2^2 = -identity away from the zero mode
  {
    SpectralField f = verify_state(g, 13);
    SpectralField rr = axpy(1.0, riesz(riesz(f, 1), 1), riesz(riesz(f, 2), 2));
    SpectralField neg = scaled(f, -1.0);
    out.push_back(check("riesz_square_sum", max_coeff_diff(rr, neg), 1e-12));
  }

  // <R1 f, g> = -<f, R1 g>
  {
    SpectralField f = verify_state(g, 14);
    SpectralField h = verify_state(g, 15);
    const double lhs = inner_l2(riesz(f, 1), h);
    const double rhs = -inner_l2(f, riesz(h, 1));
    out.push_back(
        check("riesz_antisymmetry", std::abs(lhs - rhs) / (l2_norm(f) * l2_norm(h)), 1e-13));
  }

  // Lambda^1 Lambda^1 = Lambda^2 and Lambda^2 = -(d11 + d22)
  {
    SpectralField f = verify_state(g, 16);
    SpectralField twice = fractional_laplacian(fractional_laplacian(f, 1.0), 1.0);
    SpectralField once = fractional_laplacian(f, 2.0);
    out.push_back(check("laplacian_compose", max_coeff_diff(twice, once) / l2_norm(f), 1e-12));
    SpectralField lap = scaled(
        axpy(1.0, derivative(derivative(f, 1), 1), derivative(derivative(f, 2), 2)), -1.0);
    out.push_back(check("laplacian_vs_derivatives", max_coeff_diff(once, lap) / l2_norm(f), 1e-11));
  }

  // real fields stay conjugate-symmetric through a physical product
  {
    SpectralField f = verify_state(g, 17);
    PhysicalField p = inverse_transform(f);
    for (double& v : p.values) v = v * v;
    out.push_back(check("conjugate_symmetry", conjugate_symmetry_defect(forward_transform(p)),
                        1e-13));
  }

  return out;
}

std::vector<VerifyCheck> verify_lp_suite() {
  const GridSpec g(64, 64);
  const DyadicFamily fam(g);
  std::vector<VerifyCheck> out;

  // dyadic blocks sum to the identity on the lattice
  {
    SpectralField f = verify_state(g, 21);
    SpectralField sum(g);
    for (int j = fam.jmin(); j <= fam.jmax(); ++j) sum = axpy(1.0, fam.block(f, j), sum);
    out.push_back(check("partition_of_unity", max_coeff_diff(sum, f) / l2_norm(f), 1e-12));
  }

  // blocks two apart are orthogonal
  {
    SpectralField f = verify_state(g, 22);
    double worst = 0.0;
    const double n2 = l2_norm(f) * l2_norm(f);
    for (int j = fam.jmin(); j + 2 <= fam.jmax(); ++j)
      worst = std::max(worst,
                       std::abs(inner_l2(fam.block(f, j), fam.block(f, j + 2))) / n2);
    out.push_back(check("block_orthogonality", worst, 1e-13));
  }

  // dyadic Sobolev norm tracks the multiplier norm
  {
    SpectralField f = verify_state(g, 23);
    double worst = 0.0;
    for (double s : {0.5, 1.0, 2.0}) {
      const double ratio = lp_sobolev_norm(fam, f, s) / sobolev_norm(f, s);
      worst = std::max(worst, std::abs(ratio - 1.0));
    }
    out.push_back(check("besov_sobolev_ratio", worst, 0.5));
  }

  // Bernstein: gradient on an annulus costs between 2^{j-1} and 2^{j+1}
  {
    BernsteinReport rep = bernstein_check(fam, 3, 2.0, 2.0, 8, 31);
    out.push_back(check("bernstein_upper", rep.ratio_max, 2.0));
    out.push_back(check("bernstein_lower_inverse", 1.0 / rep.ratio_min, 2.0));
  }

  return out;
}

std::vector<VerifyCheck> verify_solver_suite() {
  const GridSpec g(64, 128);
  std::vector<VerifyCheck> out;

  // linear-only integration matches the per-mode exponential
  {
    RandomFieldOptions opt;
    opt.decay = 3.0;
    opt.band_hi = 8.0;
    SpectralField theta0 = random_real_field(g, 41, opt);
    ScalingRegime reg = ScalingRegime::fixed(0.1, 0.5);
    SolverConfig cfg;
    cfg.t_end = 0.5;
    cfg.dt_max = 1e-2;
    cfg.eps_dt_factor = 0.0;
    cfg.linear_only = true;
    cfg.dealias = false;
    cfg.sample_every = 1 << 20;
    Trajectory traj = integrate(theta0, reg, cfg);
    const std::vector<cplx> lam = linear_symbol(g, reg);
    SpectralField exact(g);
    for (size_t i = 0; i < exact.coeffs.size(); ++i)
      exact.coeffs[i] = theta0.coeffs[i] * std::exp(-cfg.t_end * lam[i]);
    out.push_back(check("exact_linear_part",
                        max_coeff_diff(traj.snapshots.back(), exact) / l2_norm(theta0), 1e-10));
  }

  // zonal data under the full solver follows the closed-form heat decay
  {
    SpectralField theta0(g);
    theta0.mode(0, 3) = cplx(0.4, 0.0);
    theta0.mode(0, -3) = cplx(0.4, 0.0);
    ScalingRegime reg = ScalingRegime::fixed(0.25, 0.5);
    SolverConfig cfg;
    cfg.t_end = 0.4;
    cfg.dt_max = 2e-3;
    cfg.eps_dt_factor = 0.0;
    cfg.sample_every = 1 << 20;
    Trajectory traj = integrate(theta0, reg, cfg);
    const double got = traj.snapshots.back().mode(0, 3).real();
    const double expect = 0.4 * std::exp(-reg.nu * g.xi2(3) * cfg.t_end);
    out.push_back(check("zonal_closed_form", std::abs(got - expect) / 0.4, 1e-12));
  }

  // the rotation term never feeds the quadratic energy estimate
  {
    SpectralField theta = verify_state(GridSpec(48, 64), 42);
    double worst = 0.0;
    for (double s : {0.0, 0.5, 1.0}) {
      const double n = l2_norm(fractional_laplacian(theta, s));
      worst = std::max(worst, std::abs(riesz_orthogonality(theta, s)) / (n * n));
    }
    out.push_back(check("riesz_energy_pairing", worst, 1e-13));
  }

  // reference advective run keeps the energy defect inside its budget
  {
    const GridSpec gd(64, 128);
    IllPreparedFamily fam;
    fam.amp = 0.5;
    SpectralField theta0 = make_ill_prepared_data(gd, fam, 0.25).theta0;
    SolverConfig cfg;
    cfg.t_end = 0.25;
    cfg.dt_max = 2e-3;
    cfg.eps_dt_factor = 0.0;
    Trajectory traj = integrate(theta0, ScalingRegime::fixed(0.25, 0.5), cfg);
    double worst = 0.0;
    for (const EnergyBudgetRow& r : energy_ledger(traj))
      if (r.budget > 0.0) worst = std::max(worst, r.defect / r.budget);
    out.push_back(check("energy_ledger_reference", worst, 1.0));

    // identical configs reproduce identical states bit for bit
    Trajectory again = integrate(theta0, ScalingRegime::fixed(0.25, 0.5), cfg);
    double diff = 0.0;
    for (size_t i = 0; i < traj.snapshots.back().coeffs.size(); ++i)
      if (traj.snapshots.back().coeffs[i] != again.snapshots.back().coeffs[i]) diff = 1.0;
    out.push_back(check("determinism_rerun", diff, 0.0));
  }

  return out;
}

int run_verify(const std::string& suite, std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::string, std::vector<VerifyCheck> (*)()>> suites;
  if (suite == "core" || suite == "all") suites.emplace_back("core", &verify_core_suite);
  if (suite == "lp" || suite == "all") suites.emplace_back("lp", &verify_lp_suite);
  if (suite == "solver" || suite == "all") suites.emplace_back("solver", &verify_solver_suite);
  if (suites.empty()) {
    err << "unknown suite: " << suite << " (expected core, lp, solver, or all)\n";
    return 1;
  }

  bool all_pass = true;
  int total = 0;
  for (const auto& [name, fn] : suites) {
    out << "suite " << name << "\n";
    for (const VerifyCheck& c : fn()) {
      char line[160];
      std::snprintf(line, sizeof(line), "  [%s] %-28s measured %.3e  bound %.3e\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.bound);
      out << line;
      all_pass = all_pass && c.pass;
      ++total;
    }
  }
  out << "verification: " << (all_pass ? "PASS" : "FAIL") << " (" << total << " checks)\n";
  return all_pass ? 0 : 1;
}

}  // namespace sqg
