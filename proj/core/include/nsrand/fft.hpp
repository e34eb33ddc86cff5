#pragma once

#include "nsrand/spectral_field.hpp"

namespace nsrand {

enum class Direction { forward, inverse };

/// Unitary discrete Fourier transform between physical samples and
/// orthonormal-basis coefficients:
///   c(xi) = L^{d/2} N^{-d} sum_x f(x) e^{-i xi.x},   f(x) = L^{-d/2} sum_xi c(xi) e^{i xi.x}.
/// Forward requires a physical field, inverse a Fourier field; InvalidArgument otherwise.
/// Results are bit-identical regardless of the calling thread.
SpectralField transform(const SpectralField& field, Direction direction);
void transform_in_place(SpectralField& field, Direction direction);

inline SpectralField to_fourier(const SpectralField& f) { return transform(f, Direction::forward); }
inline SpectralField to_physical(const SpectralField& f) { return transform(f, Direction::inverse); }

}  // namespace nsrand
