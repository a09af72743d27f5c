#pragma once

#include <complex>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg {

using cplx = std::complex<double>;

// Fourier coefficients of a real field. coeffs[grid.idx(i,k)] is the mode
// with signed frequencies (jfreq(i), mfreq(k)); normalization is such that
// the constant field 1 has coefficient 1 at the zero mode. Real data means
// coeffs(-j,-m) = conj(coeffs(j,m)) with indices wrapped mod (n1, n2).
struct SpectralField {
  GridSpec grid;
  std::vector<cplx> coeffs;

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g) : grid(g), coeffs(g.size(), cplx{}) {}

  cplx& at(int i, int k) { return coeffs[grid.idx(i, k)]; }
  const cplx& at(int i, int k) const { return coeffs[grid.idx(i, k)]; }

  // access by signed frequency indices
  cplx& mode(int j, int m) { return coeffs[grid.idx(grid.iof(j), grid.kof(m))]; }
  const cplx& mode(int j, int m) const {
    return coeffs[grid.idx(grid.iof(j), grid.kof(m))];
  }
};

// Point values on the collocation grid, values[grid.idx(i,k)] = f(x1(i), x2(k)).
struct PhysicalField {
  GridSpec grid;
  std::vector<double> values;

  PhysicalField() = default;
  explicit PhysicalField(const GridSpec& g) : grid(g), values(g.size(), 0.0) {}

  double& at(int i, int k) { return values[grid.idx(i, k)]; }
  const double& at(int i, int k) const { return values[grid.idx(i, k)]; }
};

}  // namespace sqg
