#pragma once

#include <cstdint>
#include <vector>

#include "sqg/field.hpp"

namespace sqg {

// Dyadic frequency decomposition on the grid's lattice.
//
// The radial profile chi is C-infinity: 1 on [0, 1/2], 0 at r >= 1, strictly
// decreasing in between (built by normalized integration of the standard bump
// exp(-1/(x(1-x)))). Cutoffs and blocks:
//
//   S_j     = chi(2^-j |xi~|) mask        (low-frequency cutoff)
//   Delta_j = S_{j+1} - S_j   for j >= 0  (annulus block)
//   Delta_{-1} = S_0 = chi(|xi~|)         (ball block)
//   Delta_j = 0 for j <= -2
//
// Consequences used by the tests: the Delta_j sum telescopes to an exact
// partition of unity on the lattice, block j is supported in the open annulus
// (2^{j-1}, 2^{j+1}), blocks with |j - k| >= 2 are exactly orthogonal, and
// S_j = sum_{k <= j-1} Delta_k holds along both evaluation paths.
class DyadicFamily {
 public:
  explicit DyadicFamily(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  int jmin() const { return -1; }
  // largest j whose annulus contains a lattice frequency
  int jmax() const { return jmax_; }

  // profile and masks at a given radius
  static double chi(double r);
  double cutoff_mask(int j, double r) const;  // chi(2^-j r)
  double block_mask(int j, double r) const;   // Delta_j symbol

  // Delta_j g; the zero field for j <= -2, and for j > jmax the mask
  // vanishes on the whole lattice.
  SpectralField block(const SpectralField& g, int j) const;

  // S_j g, evaluated directly from the chi mask.
  SpectralField low_cutoff(const SpectralField& g, int j) const;

 private:
  GridSpec grid_;
  int jmax_ = -1;
};

// Besov norm: l^r over j in [-1, jmax] of 2^{js} ||Delta_j g||_{L^p}, with
// L^p by grid quadrature. p and r live in [1, inf].
struct BesovIndex {
  double s = 0.0;
  double p = 2.0;
  double r = 2.0;
};
double besov_norm(const DyadicFamily& fam, const SpectralField& g,
                  const BesovIndex& idx);

// The B^s_{2,2} norm computed spectrally (Parseval per block); equivalent to
// the Sobolev multiplier norm with grid-independent constants.
double lp_sobolev_norm(const DyadicFamily& fam, const SpectralField& g,
                       double s);

// Measured Bernstein ratios on random fields supported in the j-th annulus:
//   upper: ||grad u||_{L^q} / (2^{j(1 + 2(1/p - 1/q))} ||u||_{L^p})
//   lower (p == q only): ||grad u||_{L^p} / (2^j ||u||_{L^p}) from below.
// Throws if the annulus contains no lattice frequency.
struct BernsteinReport {
  int j = 0;
  double p = 2.0, q = 2.0;
  double ratio_max = 0.0;  // largest measured upper-bound ratio
  double ratio_min = 0.0;  // smallest measured ratio (two-sided bound)
  int trials = 0;
};
BernsteinReport bernstein_check(const DyadicFamily& fam, int j, double p,
                                double q, int trials, std::uint64_t seed);

// Commutator [u . grad, Delta_j] theta with dealiased pseudo-spectral
// products. u must be divergence-free (callers build it from a stream field).
SpectralField commutator_block(const DyadicFamily& fam, const PhysicalField& u1,
                               const PhysicalField& u2,
                               const SpectralField& theta, int j);

// Per-block ratios r_j = ||[u.grad, Delta_j] theta||_{L^2} /
// (||theta||_inf ||u||_{H^s} + ||theta||_{H^s} ||u||_inf), j = -1..jmax.
// Normalizing by their l^2 norm C yields coefficients c_j in the unit ball.
std::vector<double> commutator_ratios(const DyadicFamily& fam,
                                      const PhysicalField& u1,
                                      const PhysicalField& u2,
                                      const SpectralField& theta, double s);

}  // namespace sqg
