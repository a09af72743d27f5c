#pragma once

#include <utility>

#include "sqg/field.hpp"

namespace sqg {

// Fourier multiplier operators on the truncated strip. Zero-mode conventions:
// Lambda^s (any s != 0), R_i and derivatives all send the zero mode to 0.
// Symbols odd in xi_i additionally zero the self-paired Nyquist row of axis i,
// which is required to keep real fields real.

// |xi~|^s multiplier. s < 0 requires a mean-free input (zero-mode coefficient
// within 1e-14 of zero relative to the coefficient scale).
SpectralField fractional_laplacian(const SpectralField& g, double s);

// R_i = d_i Lambda^{-1}, symbol i*xi_i/|xi~|; axis is 1 or 2.
SpectralField riesz(const SpectralField& g, int axis);

// d/dx_i, symbol i*xi_i.
SpectralField derivative(const SpectralField& g, int axis);

// u = R_perp(theta) = (-R_2 theta, R_1 theta); divergence-free by symbol.
std::pair<SpectralField, SpectralField> velocity_from_theta(
    const SpectralField& theta);

// Projection onto the zonal sector (x1-average as a field constant in x1).
// Keeps the xi1 = 0 column bitwise, zeroes the rest; idempotent exactly.
SpectralField horizontal_mean(const SpectralField& g);

// Two-thirds rule: zero every coefficient with |j| > n1/3 or |m| > n2/3.
SpectralField dealias(const SpectralField& g);

// Norms and pairings. Physical and spectral L2 agree by Parseval; the domain
// measure L1*2*L2 is included so values match integrals over the strip.
double l2_norm(const SpectralField& g);
double l2_norm(const PhysicalField& f);
double lp_norm(const PhysicalField& f, double p);  // p in [1, inf]
double sobolev_norm(const SpectralField& g, double s);  // (1+|xi|^2)^{s/2} weight
double hhalf_seminorm(const SpectralField& g);           // ||Lambda^{1/2} g||
double inner_l2(const SpectralField& a, const SpectralField& b);

// Largest deviation from coeffs(-j,-m) = conj(coeffs(j,m)); roundoff-sized
// for fields representing real data.
double conjugate_symmetry_defect(const SpectralField& g);

// Field arithmetic helpers.
SpectralField scaled(const SpectralField& g, double a);
SpectralField axpy(double a, const SpectralField& x, const SpectralField& y);

}  // namespace sqg
