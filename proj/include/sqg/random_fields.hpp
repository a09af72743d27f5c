#pragma once

#include <cstdint>
#include <limits>

#include "sqg/field.hpp"

namespace sqg {

// Seeded random real fields for property suites and experiments.
//
// Reproducibility contract: the stream is mt19937_64 seeded directly with
// `seed`; uniforms in [0,1) are (x >> 11) * 2^-53. Modes are visited in
// storage order (k outer, i inner) and one conjugate pair is drawn per
// canonical representative, so a (grid, options, seed) triple always yields
// the same field. Distributions from <random> are avoided on purpose; their
// streams are implementation-defined.
struct RandomFieldOptions {
  double decay = 1.5;   // coefficient magnitude ~ (1 + |xi~|)^(-decay)
  double band_lo = 0.0; // keep modes with band_lo < |xi~| < band_hi only
  double band_hi = std::numeric_limits<double>::infinity();
  bool mean_free = true;
};

// Conjugate-symmetric coefficients, Nyquist rows empty, zero mode zero unless
// mean_free is false.
SpectralField random_real_field(const GridSpec& grid, std::uint64_t seed,
                                const RandomFieldOptions& opt = {});

}  // namespace sqg
