#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "nsrand/grid.hpp"

namespace nsrand {

using Complex = std::complex<double>;

enum class Space { fourier, physical };

/// A collection of complex arrays over one grid, either as Fourier coefficients
/// or as physical-space samples. Vector fields carry grid.dim() components,
/// scalar fields one.
///
/// Fourier coefficients are taken against the orthonormal basis
/// e^{i xi.x} / L^{d/2} of L^2 of the box, so the coefficient l2 norm equals the
/// physical L^2 norm (cell-volume Riemann sum) exactly up to rounding.
class SpectralField {
 public:
  SpectralField(Grid grid, std::size_t components, Space space);

  static SpectralField vector(const Grid& grid, Space space = Space::fourier) {
    return {grid, static_cast<std::size_t>(grid.dim()), space};
  }
  static SpectralField scalar(const Grid& grid, Space space = Space::fourier) {
    return {grid, 1, space};
  }

  const Grid& grid() const noexcept { return grid_; }
  Space space() const noexcept { return space_; }
  std::size_t components() const noexcept { return components_; }
  bool is_vector() const noexcept { return components_ == static_cast<std::size_t>(grid_.dim()); }

  std::span<Complex> component(std::size_t c);
  std::span<const Complex> component(std::size_t c) const;
  std::span<Complex> values() noexcept { return values_; }
  std::span<const Complex> values() const noexcept { return values_; }

  Complex& operator()(std::size_t c, std::size_t idx) { return values_[c * grid_.size() + idx]; }
  const Complex& operator()(std::size_t c, std::size_t idx) const {
    return values_[c * grid_.size() + idx];
  }

  /// Same grid, component count and space.
  bool same_layout(const SpectralField& other) const noexcept;
  /// Retag without touching values; used by the transforms.
  void set_space(Space space) noexcept { space_ = space; }
  void set_zero();

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double factor);
  SpectralField& operator*=(Complex factor);

  friend bool operator==(const SpectralField& a, const SpectralField& b) {
    return a.same_layout(b) && a.values_ == b.values_;
  }

 private:
  Grid grid_;
  std::size_t components_;
  Space space_;
  std::vector<Complex> values_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double factor, SpectralField a);

/// Throws InvalidArgument when the field is not in the expected space.
void require_space(const SpectralField& field, Space expected, const char* what);

}  // namespace nsrand
