#include "nsrand/operators.hpp"

#include <cmath>
#include <string>

#include "nsrand/error.hpp"

namespace nsrand {

int ring_index_from_squared(double xi_squared, int dim) {
  if (dim < 1) throw InvalidArgument("ring_index: dimension must be positive");
  const double radius = std::sqrt(xi_squared);
  double power = 1.0;
  // Integer powers of the correctly rounded root keep perfect squares exact.
  if (dim % 2 == 0) {
    for (int i = 0; i < dim / 2; ++i) power *= xi_squared;
  } else {
    power = radius;
    for (int i = 0; i < dim / 2; ++i) power *= xi_squared;
  }
  return static_cast<int>(std::floor(power)) + 1;
}

int ring_index(std::span<const double> xi) {
  double r2 = 0.0;
  for (double v : xi) r2 += v * v;
  return ring_index_from_squared(r2, static_cast<int>(xi.size()));
}

RingPartition::RingPartition(const Grid& grid) : grid_(grid), index_(grid.size()) {
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const int n = ring_index_from_squared(grid.xi_squared(idx), grid.dim());
    index_[idx] = n;
    if (n > max_ring_) max_ring_ = n;
  }
  occupancy_.assign(static_cast<std::size_t>(max_ring_), 0);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    if (!grid.is_nyquist(idx)) ++occupancy_[static_cast<std::size_t>(index_[idx] - 1)];
  }
}

SpectralField ring_project(const SpectralField& field, const RingPartition& partition, int n) {
  require_space(field, Space::fourier, "ring_project");
  if (n < 1) throw InvalidArgument("ring_project: ring number must be >= 1");
  if (!(partition.grid() == field.grid())) {
    throw InvalidArgument("ring_project: partition built for a different grid");
  }
  SpectralField out = field;
  apply_symbol_in_place(out, [&](std::size_t idx) { return partition.ring(idx) == n ? 1.0 : 0.0; });
  return out;
}

void friedrichs_cutoff_in_place(SpectralField& field, double radius) {
  const double r2 = radius * radius;
  const Grid& grid = field.grid();
  apply_symbol_in_place(field, [&](std::size_t idx) {
    return radius > 0.0 && grid.xi_squared(idx) < r2 ? 1.0 : 0.0;
  });
}

SpectralField friedrichs_cutoff(const SpectralField& field, double radius) {
  SpectralField out = field;
  friedrichs_cutoff_in_place(out, radius);
  return out;
}

void leray_project_in_place(SpectralField& field) {
  require_space(field, Space::fourier, "leray_project");
  if (!field.is_vector()) throw InvalidArgument("leray_project: needs a vector field");
  const Grid& grid = field.grid();
  const int d = grid.dim();
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const double k2 = grid.xi_squared(idx);
    if (k2 == 0.0) continue;
    double xi[3] = {0.0, 0.0, 0.0};
    Complex dot{};
    for (int a = 0; a < d; ++a) {
      xi[a] = grid.wavenumber(idx, a);
      dot += xi[a] * field(static_cast<std::size_t>(a), idx);
    }
    const Complex scaled = dot / k2;
    for (int a = 0; a < d; ++a) field(static_cast<std::size_t>(a), idx) -= xi[a] * scaled;
  }
}

SpectralField leray_project(const SpectralField& field) {
  SpectralField out = field;
  leray_project_in_place(out);
  return out;
}

SpectralField partial_derivative(const SpectralField& field, int axis) {
  const Grid& grid = field.grid();
  if (axis < 0 || axis >= grid.dim()) throw InvalidArgument("partial_derivative: bad axis");
  require_space(field, Space::fourier, "partial_derivative");
  SpectralField out = field;
  apply_symbol_in_place(out, [&](std::size_t idx) {
    return grid.is_nyquist(idx) ? Complex{} : Complex(0.0, grid.wavenumber(idx, axis));
  });
  return out;
}

SpectralField gradient(const SpectralField& scalar) {
  require_space(scalar, Space::fourier, "gradient");
  if (scalar.components() != 1) throw InvalidArgument("gradient: needs a scalar field");
  const Grid& grid = scalar.grid();
  SpectralField out = SpectralField::vector(grid);
  for (int a = 0; a < grid.dim(); ++a) {
    auto dst = out.component(static_cast<std::size_t>(a));
    auto src = scalar.component(0);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      dst[idx] = grid.is_nyquist(idx) ? Complex{} : Complex(0.0, grid.wavenumber(idx, a)) * src[idx];
    }
  }
  return out;
}

SpectralField divergence(const SpectralField& vector) {
  require_space(vector, Space::fourier, "divergence");
  if (!vector.is_vector()) throw InvalidArgument("divergence: needs a vector field");
  const Grid& grid = vector.grid();
  SpectralField out = SpectralField::scalar(grid);
  auto dst = out.component(0);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    if (grid.is_nyquist(idx)) continue;
    Complex acc{};
    for (int a = 0; a < grid.dim(); ++a) {
      acc += Complex(0.0, grid.wavenumber(idx, a)) * vector(static_cast<std::size_t>(a), idx);
    }
    dst[idx] = acc;
  }
  return out;
}

SpectralField fractional_laplacian(const SpectralField& field, double sigma) {
  require_space(field, Space::fourier, "fractional_laplacian");
  const Grid& grid = field.grid();
  if (sigma < 0.0) {
    const std::size_t zero = 0;  // index 0 is xi = 0 in FFT order
    for (std::size_t c = 0; c < field.components(); ++c) {
      if (field(c, zero) != Complex{}) {
        throw InvalidArgument("fractional_laplacian: negative order needs a mean-zero field");
      }
    }
  }
  SpectralField out = field;
  apply_symbol_in_place(out, [&](std::size_t idx) {
    const double k2 = grid.xi_squared(idx);
    if (k2 == 0.0) return sigma == 0.0 ? 1.0 : 0.0;
    return std::pow(k2, 0.5 * sigma);
  });
  return out;
}

SpectralField bracket(const SpectralField& field, double s) {
  require_space(field, Space::fourier, "bracket");
  const Grid& grid = field.grid();
  SpectralField out = field;
  if (s == 0.0) return out;
  apply_symbol_in_place(out, [&](std::size_t idx) { return std::pow(1.0 + grid.xi_squared(idx), 0.5 * s); });
  return out;
}

SpectralField laplacian(const SpectralField& field) {
  require_space(field, Space::fourier, "laplacian");
  const Grid& grid = field.grid();
  SpectralField out = field;
  apply_symbol_in_place(out, [&](std::size_t idx) {
    return grid.is_nyquist(idx) ? 0.0 : -grid.xi_squared(idx);
  });
  return out;
}

SpectralField multiplier(const SpectralField& field, MultiplierKind kind, double order) {
  switch (kind) {
    case MultiplierKind::gradient_component: {
      const int axis = static_cast<int>(order);
      if (static_cast<double>(axis) != order) {
        throw InvalidArgument("multiplier: gradient component needs an integer axis");
      }
      return partial_derivative(field, axis);
    }
    case MultiplierKind::divergence:
      return divergence(field);
    case MultiplierKind::fractional_laplacian:
      return fractional_laplacian(field, order);
    case MultiplierKind::bracket:
      return bracket(field, order);
  }
  throw InvalidArgument("multiplier: unknown kind");
}

bool in_dealiased_band(const Grid& grid, std::size_t idx) {
  // |xi_i| <= (2pi/L) N/3  <=>  3|m_i| <= N, done in integers.
  const Mode& m = grid.mode(idx);
  for (int a = 0; a < grid.dim(); ++a) {
    if (3 * std::abs(m[static_cast<std::size_t>(a)]) > grid.points()) return false;
  }
  return true;
}

void dealias_in_place(SpectralField& field) {
  const Grid& grid = field.grid();
  apply_symbol_in_place(field, [&](std::size_t idx) { return in_dealiased_band(grid, idx) ? 1.0 : 0.0; });
}

SpectralField dealias(const SpectralField& field) {
  SpectralField out = field;
  dealias_in_place(out);
  return out;
}

void zero_nyquist_and_mean(SpectralField& field) {
  const Grid& grid = field.grid();
  apply_symbol_in_place(field, [&](std::size_t idx) {
    return grid.is_nyquist(idx) || grid.xi_squared(idx) == 0.0 ? 0.0 : 1.0;
  });
}

}  // namespace nsrand
