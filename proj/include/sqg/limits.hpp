#pragma once

#include <vector>

#include "sqg/field.hpp"
#include "sqg/grid.hpp"

namespace sqg {

// x1-independent profile: the spectral coefficients of a function of x2
// alone, stored like the xi1 = 0 column of a SpectralField (index k,
// frequency m = mfreq(k)).
struct ZonalProfile {
  GridSpec grid;
  std::vector<cplx> coeffs;  // size n2
};

ZonalProfile project_to_zonal(const SpectralField& g);
ZonalProfile zonal_from_column(const GridSpec& grid, const std::vector<cplx>& column);
SpectralField embed_zonal(const ZonalProfile& p);

// Mean-profile dynamics when the damping strength stays fixed while the
// rotation becomes fast: each x2 mode decays like exp(-nu |xi2| t).
ZonalProfile evolve_fast_rotation_limit(const ZonalProfile& p0, double nu, double t);

// Joint limit with damping tied to the rotation strength: the profile
// freezes at its initial value.
ZonalProfile evolve_combined_limit(const ZonalProfile& p0, double t);

double zonal_l2_norm(const ZonalProfile& p);

// Physical values along the x2 line (grid points x2(k)).
std::vector<double> zonal_values(const ZonalProfile& p);

}  // namespace sqg
