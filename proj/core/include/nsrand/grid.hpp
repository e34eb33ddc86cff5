#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace nsrand {

/// Integer lattice coordinates of one discrete frequency. Axes beyond dim() are 0.
using Mode = std::array<int, 3>;

/// Periodic box [0, L)^d with N points per axis and its frequency lattice (2pi/L) Z^d.
///
/// Storage order is row-major with axis 0 slowest and FFT ordering along every
/// axis: index i maps to the integer frequency i for i < N/2 and i - N otherwise.
/// The row with frequency -N/2 on any axis is the Nyquist row; all data
/// constructors and derivative multipliers keep it at zero.
///
/// Grid is cheap to copy; the lattice tables are shared and immutable.
class Grid {
 public:
  /// Throws InvalidArgument unless dim is 2 or 3, points is even and >= 8, length > 0.
  static Grid make(int dim, int points, double length);

  int dim() const noexcept { return dim_; }
  int points() const noexcept { return points_; }
  double length() const noexcept { return length_; }
  std::size_t size() const noexcept { return size_; }

  double wavenumber_unit() const noexcept { return 2.0 * std::numbers::pi / length_; }
  double spacing() const noexcept { return length_ / points_; }
  double cell_volume() const noexcept;
  double volume() const noexcept;
  /// Largest resolved |xi_i| along one axis, (2pi/L) N/2.
  double max_wavenumber() const noexcept { return wavenumber_unit() * (points_ / 2); }
  /// Two-thirds-rule band edge, (2pi/L) N/3.
  double dealias_radius() const noexcept { return wavenumber_unit() * points_ / 3.0; }

  const Mode& mode(std::size_t idx) const { return tables_->modes[idx]; }
  double wavenumber(std::size_t idx, int axis) const {
    return wavenumber_unit() * tables_->modes[idx][static_cast<std::size_t>(axis)];
  }
  double xi_squared(std::size_t idx) const { return tables_->xi2[idx]; }
  std::span<const double> xi_squared() const { return tables_->xi2; }
  bool is_nyquist(std::size_t idx) const { return tables_->nyquist[idx] != 0; }

  /// Index of an integer frequency with every coordinate in [-N/2, N/2).
  std::size_t index_of(const Mode& m) const;
  /// Index of -xi. The Nyquist row maps to itself.
  std::size_t negated(std::size_t idx) const;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.dim_ == b.dim_ && a.points_ == b.points_ && a.length_ == b.length_;
  }

 private:
  struct Tables {
    std::vector<Mode> modes;
    std::vector<double> xi2;
    std::vector<unsigned char> nyquist;
  };

  Grid(int dim, int points, double length, std::shared_ptr<const Tables> tables);

  int dim_ = 0;
  int points_ = 0;
  double length_ = 0.0;
  std::size_t size_ = 0;
  std::shared_ptr<const Tables> tables_;
};

inline Grid make_grid(int dim, int points, double length) { return Grid::make(dim, points, length); }

}  // namespace nsrand
