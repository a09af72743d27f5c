#include "sqg/random_fields.hpp"

#include <cmath>
#include <random>

namespace sqg {

namespace {

double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

SpectralField random_real_field(const GridSpec& grid, std::uint64_t seed,
                                const RandomFieldOptions& opt) {
  grid.validate();
  std::mt19937_64 eng(seed);
  SpectralField out(grid);
  for (int k = 0; k < grid.n2; ++k) {
    const int m = grid.mfreq(k);
    const int kp = (grid.n2 - k) % grid.n2;
    for (int i = 0; i < grid.n1; ++i) {
      const int j = grid.jfreq(i);
      const int ip = (grid.n1 - i) % grid.n1;
      if (j == -grid.n1 / 2 || m == -grid.n2 / 2) continue;  // Nyquist stays empty
      const int a = grid.idx(i, k), b = grid.idx(ip, kp);
      if (a > b) continue;  // partner already visited
      const double r = std::sqrt(grid.xi_norm2(j, m));
      if (a == b) {
        // self-paired (only the zero mode once Nyquist is excluded): real value
        if (opt.mean_free || opt.band_lo > 0.0) continue;
        out.coeffs[a] = cplx(2.0 * uniform01(eng) - 1.0, 0.0);
      } else {
        if (!(r > opt.band_lo) || !(r < opt.band_hi)) continue;
        const double amp = std::pow(1.0 + r, -opt.decay);
        const cplx c(amp * (2.0 * uniform01(eng) - 1.0),
                     amp * (2.0 * uniform01(eng) - 1.0));
        out.coeffs[a] = c;
        out.coeffs[b] = std::conj(c);
      }
    }
  }
  return out;
}

}  // namespace sqg
