#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nsrand/spectral_field.hpp"

namespace nsrand::testing {

/// Real random field in physical space, entries uniform on [-1, 1].
SpectralField random_physical(const Grid& grid, std::size_t components, std::uint64_t seed);

/// Fourier coefficients of a real random field with the Nyquist row and mean removed.
SpectralField random_fourier(const Grid& grid, std::size_t components, std::uint64_t seed);

/// As random_fourier, Leray-projected by the explicit per-mode matrix.
SpectralField random_divergence_free(const Grid& grid, std::uint64_t seed);

/// Real divergence-free field with random coefficients only on modes with |xi| < radius.
SpectralField random_band_limited(const Grid& grid, double radius, double amplitude, std::uint64_t seed);

/// Direct O(N^{2d}) sum c(xi) = L^{d/2} N^{-d} sum_x f(x) e^{-i xi.x}.
SpectralField naive_forward_dft(const SpectralField& physical);

/// Orthonormal-basis coefficients of a.b-type products by explicit convolution:
/// (a_i b_j)^(xi) = L^{-d/2} sum_eta a_i(eta) b_j(xi - eta), restricted to frequencies
/// representable on the grid without wrapping.
std::vector<Complex> convolve(const Grid& grid, std::span<const Complex> a, std::span<const Complex> b);

/// -J P div(a (x) b) assembled mode by mode from the convolution above.
SpectralField convolution_nonlinearity(const SpectralField& a, const SpectralField& b,
                                       std::optional<double> cutoff);

/// Max |a - b| over every coefficient.
double max_abs_diff(const SpectralField& a, const SpectralField& b);
/// Euclidean norm of all coefficients.
double coefficient_norm(const SpectralField& a);

/// Lattice coordinates of idx with the FFT-order wrap undone.
Mode lattice_mode(const Grid& grid, std::size_t idx);

}  // namespace nsrand::testing
