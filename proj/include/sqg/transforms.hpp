#pragma once

#include <cstdint>

#include "sqg/field.hpp"

namespace sqg {

// Forward transform: point values -> Fourier coefficients, normalized so the
// constant field 1 maps to coefficient 1 at the zero mode. Input values must
// be finite. The output of a real input satisfies conjugate symmetry up to
// roundoff.
SpectralField forward_transform(const PhysicalField& f);

// Inverse transform: coefficients -> point values. The imaginary part of the
// reconstruction is discarded; callers keep fields conjugate-symmetric, where
// it is roundoff-sized. forward/inverse round-trip to 1e-12 relative.
PhysicalField inverse_transform(const SpectralField& g);

// Number of executed FFTs since process start. The transform cost of a solver
// step is a fixed count independent of the scaling regime; tests assert on
// this counter rather than on wall time.
std::uint64_t transform_count();

}  // namespace sqg
