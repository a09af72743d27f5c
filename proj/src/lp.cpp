#include "sqg/lp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sqg/operators.hpp"
#include "sqg/random_fields.hpp"
#include "sqg/transforms.hpp"

namespace sqg {

namespace {

// normalized bump integral: G(t) = int_0^t b / int_0^1 b with
// b(s) = exp(-1/(s(1-s))). G rises smoothly from 0 to 1; all derivatives
// vanish at the endpoints.
double bump(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return std::exp(-1.0 / (s * (1.0 - s)));
}

struct BumpTable {
  static constexpr int N = 4096;
  std::array<double, N + 1> G{};
  double Z = 0.0;

  BumpTable() {
    const double h = 1.0 / N;
    double acc = 0.0;
    G[0] = 0.0;
    for (int i = 0; i < N; ++i) {
      const double a = i * h, b = (i + 1) * h;
      acc += h / 6.0 * (bump(a) + 4.0 * bump(0.5 * (a + b)) + bump(b));
      G[i + 1] = acc;
    }
    Z = acc;
    for (double& v : G) v /= Z;
  }

  // cubic Hermite with exact endpoint slopes b(t)/Z; interpolation error is
  // far below the 1e-12 tolerances used downstream
  double eval(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double h = 1.0 / N;
    int i = std::min(static_cast<int>(t * N), N - 1);
    const double s = (t - i * h) / h;
    const double g0 = G[i], g1 = G[i + 1];
    const double d0 = bump(i * h) / Z * h, d1 = bump((i + 1) * h) / Z * h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * g0 + (s3 - 2 * s2 + s) * d0 +
           (-2 * s3 + 3 * s2) * g1 + (s3 - s2) * d1;
  }
};

const BumpTable& bump_table() {
  static const BumpTable t;
  return t;
}

}  // namespace

double DyadicFamily::chi(double r) {
  if (r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  return 1.0 - bump_table().eval(2.0 * r - 1.0);
}

DyadicFamily::DyadicFamily(const GridSpec& grid) : grid_(grid) {
  grid.validate();
  // jmax: largest j whose open annulus (2^{j-1}, 2^{j+1}) meets the lattice
  int jm = -1;
  for (int k = 0; k < grid.n2; ++k) {
    const int m = grid.mfreq(k);
    for (int i = 0; i < grid.n1; ++i) {
      const double r2 = grid.xi_norm2(grid.jfreq(i), m);
      if (r2 == 0.0) continue;
      const double r = std::sqrt(r2);
      int j = static_cast<int>(std::floor(std::log2(r))) + 1;
      while (std::ldexp(1.0, j - 1) >= r) --j;  // enforce strict 2^{j-1} < r
      jm = std::max(jm, j);
    }
  }
  jmax_ = jm;
}

double DyadicFamily::cutoff_mask(int j, double r) const {
  return chi(std::ldexp(r, -j));
}

double DyadicFamily::block_mask(int j, double r) const {
  if (j <= -2) return 0.0;
  if (j == -1) return chi(r);
  return chi(std::ldexp(r, -(j + 1))) - chi(std::ldexp(r, -j));
}

SpectralField DyadicFamily::block(const SpectralField& g, int j) const {
  require_same_grid(g.grid, grid_, "dyadic block");
  SpectralField out(grid_);
  if (j <= -2) return out;
  for (int k = 0; k < grid_.n2; ++k) {
    const int m = grid_.mfreq(k);
    for (int i = 0; i < grid_.n1; ++i) {
      const int a = grid_.idx(i, k);
      const double r = std::sqrt(grid_.xi_norm2(grid_.jfreq(i), m));
      out.coeffs[a] = block_mask(j, r) * g.coeffs[a];
    }
  }
  return out;
}

SpectralField DyadicFamily::low_cutoff(const SpectralField& g, int j) const {
  require_same_grid(g.grid, grid_, "low-frequency cutoff");
  SpectralField out(grid_);
  for (int k = 0; k < grid_.n2; ++k) {
    const int m = grid_.mfreq(k);
    for (int i = 0; i < grid_.n1; ++i) {
      const int a = grid_.idx(i, k);
      const double r = std::sqrt(grid_.xi_norm2(grid_.jfreq(i), m));
      out.coeffs[a] = cutoff_mask(j, r) * g.coeffs[a];
    }
  }
  return out;
}

double besov_norm(const DyadicFamily& fam, const SpectralField& g,
                  const BesovIndex& idx) {
  if (idx.p < 1.0 || idx.r < 1.0)
    throw std::invalid_argument("besov_norm: p and r must be >= 1");
  const bool rinf = std::isinf(idx.r);
  double acc = 0.0;
  for (int j = fam.jmin(); j <= fam.jmax(); ++j) {
    const double bj = std::pow(2.0, j * idx.s) *
                      lp_norm(inverse_transform(fam.block(g, j)), idx.p);
    if (rinf)
      acc = std::max(acc, bj);
    else
      acc += std::pow(bj, idx.r);
  }
  return rinf ? acc : std::pow(acc, 1.0 / idx.r);
}

double lp_sobolev_norm(const DyadicFamily& fam, const SpectralField& g,
                       double s) {
  require_same_grid(g.grid, fam.grid(), "lp_sobolev_norm");
  const GridSpec& gr = g.grid;
  double acc = 0.0;
  for (int j = fam.jmin(); j <= fam.jmax(); ++j) {
    double block2 = 0.0;  // ||Delta_j g||_{L^2}^2 by Parseval
    for (int k = 0; k < gr.n2; ++k) {
      const int m = gr.mfreq(k);
      for (int i = 0; i < gr.n1; ++i) {
        const double r = std::sqrt(gr.xi_norm2(gr.jfreq(i), m));
        const double mask = fam.block_mask(j, r);
        if (mask != 0.0)
          block2 += mask * mask * std::norm(g.coeffs[gr.idx(i, k)]);
      }
    }
    acc += std::pow(4.0, j * s) * gr.domain_area() * block2;
  }
  return std::sqrt(acc);
}

BernsteinReport bernstein_check(const DyadicFamily& fam, int j, double p,
                                double q, int trials, std::uint64_t seed) {
  if (q < p) throw std::invalid_argument("bernstein_check: needs q >= p");
  const GridSpec& gr = fam.grid();
  const double lo = std::ldexp(1.0, j - 1), hi = std::ldexp(1.0, j + 1);
  bool nonempty = false;
  for (int k = 0; k < gr.n2 && !nonempty; ++k)
    for (int i = 0; i < gr.n1; ++i) {
      const double r = std::sqrt(gr.xi_norm2(gr.jfreq(i), gr.mfreq(k)));
      if (r > lo && r < hi) {
        nonempty = true;
        break;
      }
    }
  if (!nonempty) throw std::invalid_argument("empty annulus on grid");

  BernsteinReport rep;
  rep.j = j;
  rep.p = p;
  rep.q = q;
  rep.trials = 0;
  rep.ratio_min = std::numeric_limits<double>::infinity();
  const double lambda = std::ldexp(1.0, j);
  const double scale =
      std::pow(lambda, 1.0 + 2.0 * (1.0 / p - 1.0 / q));
  for (int t = 0; t < trials; ++t) {
    RandomFieldOptions opt;
    opt.band_lo = lo;
    opt.band_hi = hi;
    opt.decay = 0.0;
    SpectralField u = random_real_field(gr, seed + 1000003ULL * t, opt);
    const double up = lp_norm(inverse_transform(u), p);
    if (!(up > 1e-300)) continue;  // degenerate draw, ratio undefined
    PhysicalField g1 = inverse_transform(derivative(u, 1));
    PhysicalField g2 = inverse_transform(derivative(u, 2));
    PhysicalField mag(gr);
    for (size_t a = 0; a < mag.values.size(); ++a)
      mag.values[a] = std::hypot(g1.values[a], g2.values[a]);
    const double ratio = lp_norm(mag, q) / (scale * up);
    rep.ratio_max = std::max(rep.ratio_max, ratio);
    rep.ratio_min = std::min(rep.ratio_min, ratio);
    ++rep.trials;
  }
  if (rep.trials == 0) rep.ratio_min = 0.0;
  return rep;
}

SpectralField commutator_block(const DyadicFamily& fam, const PhysicalField& u1,
                               const PhysicalField& u2,
                               const SpectralField& theta, int j) {
  const GridSpec& gr = fam.grid();
  require_same_grid(u1.grid, gr, "commutator_block");
  require_same_grid(u2.grid, gr, "commutator_block");
  require_same_grid(theta.grid, gr, "commutator_block");

  auto advect = [&](const SpectralField& f) {
    PhysicalField fx = inverse_transform(derivative(f, 1));
    PhysicalField fy = inverse_transform(derivative(f, 2));
    PhysicalField adv(gr);
    for (size_t a = 0; a < adv.values.size(); ++a)
      adv.values[a] = u1.values[a] * fx.values[a] + u2.values[a] * fy.values[a];
    return dealias(forward_transform(adv));
  };

  SpectralField first = fam.block(advect(theta), j);
  SpectralField second = advect(fam.block(theta, j));
  return axpy(-1.0, second, first);
}

std::vector<double> commutator_ratios(const DyadicFamily& fam,
                                      const PhysicalField& u1,
                                      const PhysicalField& u2,
                                      const SpectralField& theta, double s) {
  const GridSpec& gr = fam.grid();
  PhysicalField th_phys = inverse_transform(theta);
  PhysicalField umag(gr);
  for (size_t a = 0; a < umag.values.size(); ++a)
    umag.values[a] = std::hypot(u1.values[a], u2.values[a]);
  const double inf_p = std::numeric_limits<double>::infinity();
  const double theta_inf = lp_norm(th_phys, inf_p);
  const double u_inf = lp_norm(umag, inf_p);
  SpectralField u1c = forward_transform(u1);
  SpectralField u2c = forward_transform(u2);
  const double u_hs = std::hypot(sobolev_norm(u1c, s), sobolev_norm(u2c, s));
  const double theta_hs = sobolev_norm(theta, s);
  const double denom = theta_inf * u_hs + theta_hs * u_inf;
  if (!(denom > 0.0))
    throw std::invalid_argument("commutator_ratios: zero state");

  std::vector<double> out;
  out.reserve(fam.jmax() + 2);
  for (int j = fam.jmin(); j <= fam.jmax(); ++j)
    out.push_back(l2_norm(commutator_block(fam, u1, u2, theta, j)) / denom);
  return out;
}

}  // namespace sqg
