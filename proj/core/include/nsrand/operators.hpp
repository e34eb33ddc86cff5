#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nsrand/spectral_field.hpp"

namespace nsrand {

/// Ring number n of a frequency: the unique n >= 1 with (n-1)^{1/d} <= |xi| < n^{1/d},
/// i.e. n = floor(|xi|^d) + 1. d is xi.size().
int ring_index(std::span<const double> xi);
/// Same, from |xi|^2 and the dimension.
int ring_index_from_squared(double xi_squared, int dim);

/// Ring number of every lattice frequency of a grid.
class RingPartition {
 public:
  explicit RingPartition(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  int ring(std::size_t idx) const { return index_[idx]; }
  /// Largest ring number carried by any lattice frequency.
  int max_ring() const noexcept { return max_ring_; }
  /// Number of non-Nyquist lattice frequencies in ring n (entry n-1).
  const std::vector<std::size_t>& occupancy() const noexcept { return occupancy_; }

 private:
  Grid grid_;
  std::vector<int> index_;
  std::vector<std::size_t> occupancy_;
  int max_ring_ = 0;
};

/// Keeps only the coefficients in ring n. Throws InvalidArgument for n < 1.
SpectralField ring_project(const SpectralField& field, const RingPartition& partition, int n);

/// Friedrichs cutoff J_n: zeroes every coefficient with |xi| >= radius.
SpectralField friedrichs_cutoff(const SpectralField& field, double radius);
void friedrichs_cutoff_in_place(SpectralField& field, double radius);

/// Leray projection onto divergence-free fields, multiplier I - xi xi^T / |xi|^2.
/// The zero mode passes through unchanged.
SpectralField leray_project(const SpectralField& field);
void leray_project_in_place(SpectralField& field);

enum class MultiplierKind {
  gradient_component,    ///< d/dx_axis applied to every component, symbol i xi_axis
  divergence,            ///< vector -> scalar, symbol i xi.
  fractional_laplacian,  ///< (-Delta)^{order/2}, symbol |xi|^order
  bracket,               ///< <sqrt(-Delta)>^order, symbol (1 + |xi|^2)^{order/2}
};

/// Coefficientwise Fourier multiplier. `order` is the axis for gradient_component,
/// the exponent for fractional_laplacian and bracket, ignored for divergence.
/// A negative-order fractional Laplacian requires a zero mean coefficient.
SpectralField multiplier(const SpectralField& field, MultiplierKind kind, double order);

SpectralField partial_derivative(const SpectralField& field, int axis);
SpectralField gradient(const SpectralField& scalar);
SpectralField divergence(const SpectralField& vector);
SpectralField fractional_laplacian(const SpectralField& field, double sigma);
SpectralField bracket(const SpectralField& field, double s);
SpectralField laplacian(const SpectralField& field);

/// Two-thirds rule: zeroes every mode with some |xi_i| > (2pi/L) N/3.
SpectralField dealias(const SpectralField& field);
void dealias_in_place(SpectralField& field);
bool in_dealiased_band(const Grid& grid, std::size_t idx);

/// Zeroes the Nyquist row and the mean coefficient.
void zero_nyquist_and_mean(SpectralField& field);

/// Multiplies every coefficient at lattice index idx by symbol(idx).
template <typename Symbol>
void apply_symbol_in_place(SpectralField& field, Symbol&& symbol) {
  require_space(field, Space::fourier, "apply_symbol");
  const std::size_t size = field.grid().size();
  for (std::size_t c = 0; c < field.components(); ++c) {
    auto values = field.component(c);
    for (std::size_t i = 0; i < size; ++i) values[i] *= symbol(i);
  }
}

}  // namespace nsrand
