#pragma once

#include <cstdint>

#include "nsrand/spectral_field.hpp"

namespace nsrand {

/// Rough divergence-free data of borderline H^{-s} regularity:
///   c(xi) = amplitude (1 + |xi|^2)^{(s - tilt)/2} e(xi),
/// with e(xi) a unit, Leray-projected vector of random phases. The field is real
/// (c(-xi) = conj c(xi)), mean-zero, and Nyquist-free. Phases depend only on
/// (seed, integer frequency), so refining the grid keeps existing modes.
/// A tilt of d/2 + epsilon puts f in H^{-s} but not in H^{-s+2 epsilon} as N grows.
SpectralField rough_data(const Grid& grid, double s, double tilt, double amplitude, std::uint64_t seed);

/// Tilt used by default experiments: d/2 + 0.05.
double default_tilt(int dim);

/// 2D Taylor-Green field (sin kx cos ky, -cos kx sin ky), k = 2pi/L; Fourier space.
SpectralField taylor_green(const Grid& grid);

/// Real cosine mode a cos(xi.x) along a fixed unit direction (Fourier space).
SpectralField single_mode(const Grid& grid, const Mode& mode, const std::array<double, 3>& direction,
                          double amplitude);

}  // namespace nsrand
