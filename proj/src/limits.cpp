#include "sqg/limits.hpp"

#include <cmath>
#include <stdexcept>

#include "sqg/operators.hpp"
#include "sqg/transforms.hpp"

namespace sqg {

ZonalProfile project_to_zonal(const SpectralField& g) {
  ZonalProfile p{g.grid, std::vector<cplx>(g.grid.n2)};
  for (int k = 0; k < g.grid.n2; ++k) p.coeffs[k] = g.at(0, k);
  return p;
}

ZonalProfile zonal_from_column(const GridSpec& grid, const std::vector<cplx>& column) {
  if (static_cast<int>(column.size()) != grid.n2)
    throw std::invalid_argument("zonal column size does not match grid");
  return ZonalProfile{grid, column};
}

SpectralField embed_zonal(const ZonalProfile& p) {
  SpectralField g(p.grid);
  for (int k = 0; k < p.grid.n2; ++k) g.at(0, k) = p.coeffs[k];
  return g;
}

ZonalProfile evolve_fast_rotation_limit(const ZonalProfile& p0, double nu, double t) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw std::invalid_argument("nu must be non-negative");
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be non-negative");
  ZonalProfile p = p0;
  for (int k = 0; k < p.grid.n2; ++k)
    p.coeffs[k] *= std::exp(-nu * std::abs(p.grid.xi2(p.grid.mfreq(k))) * t);
  return p;
}

ZonalProfile evolve_combined_limit(const ZonalProfile& p0, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be non-negative");
  return p0;
}

double zonal_l2_norm(const ZonalProfile& p) {
  double acc = 0.0;
  for (const cplx& c : p.coeffs) acc += std::norm(c);
  return std::sqrt(p.grid.domain_area() * acc);
}

std::vector<double> zonal_values(const ZonalProfile& p) {
  PhysicalField f = inverse_transform(embed_zonal(p));
  std::vector<double> v(p.grid.n2);
  for (int k = 0; k < p.grid.n2; ++k) v[k] = f.at(0, k);
  return v;
}

}  // namespace sqg
