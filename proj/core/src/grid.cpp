#include "nsrand/grid.hpp"

#include <cmath>
#include <string>

#include "nsrand/error.hpp"

namespace nsrand {

Grid::Grid(int dim, int points, double length, std::shared_ptr<const Tables> tables)
    : dim_(dim), points_(points), length_(length), tables_(std::move(tables)) {
  size_ = tables_->modes.size();
}

Grid Grid::make(int dim, int points, double length) {
  if (dim != 2 && dim != 3) {
    throw InvalidArgument("grid dimension must be 2 or 3, got " + std::to_string(dim));
  }
  if (points < 8 || points % 2 != 0) {
    throw InvalidArgument("points per axis must be even and >= 8, got " + std::to_string(points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidArgument("box length must be positive and finite");
  }

  std::size_t size = 1;
  for (int a = 0; a < dim; ++a) size *= static_cast<std::size_t>(points);

  auto tables = std::make_shared<Tables>();
  tables->modes.resize(size);
  tables->xi2.resize(size);
  tables->nyquist.resize(size);

  const double unit = 2.0 * std::numbers::pi / length;
  const int half = points / 2;
  for (std::size_t idx = 0; idx < size; ++idx) {
    Mode m{0, 0, 0};
    std::size_t rest = idx;
    bool nyquist = false;
    for (int a = dim - 1; a >= 0; --a) {
      const int i = static_cast<int>(rest % static_cast<std::size_t>(points));
      rest /= static_cast<std::size_t>(points);
      m[static_cast<std::size_t>(a)] = i < half ? i : i - points;
      nyquist = nyquist || i == half;
    }
    // Integer sum first so |xi|^2 is exact on a 2pi box.
    const long long m2 = static_cast<long long>(m[0]) * m[0] + static_cast<long long>(m[1]) * m[1] +
                         static_cast<long long>(m[2]) * m[2];
    tables->modes[idx] = m;
    tables->xi2[idx] = unit * unit * static_cast<double>(m2);
    tables->nyquist[idx] = nyquist ? 1 : 0;
  }
  return Grid(dim, points, length, std::move(tables));
}

double Grid::cell_volume() const noexcept { return std::pow(spacing(), dim_); }

double Grid::volume() const noexcept { return std::pow(length_, dim_); }

std::size_t Grid::index_of(const Mode& m) const {
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a) {
    const int v = m[static_cast<std::size_t>(a)];
    if (v < -points_ / 2 || v >= points_ / 2) {
      throw InvalidArgument("frequency coordinate outside the lattice");
    }
    idx = idx * static_cast<std::size_t>(points_) + static_cast<std::size_t>(v < 0 ? v + points_ : v);
  }
  return idx;
}

std::size_t Grid::negated(std::size_t idx) const {
  const Mode& m = mode(idx);
  Mode neg{0, 0, 0};
  for (int a = 0; a < dim_; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    neg[ua] = m[ua] == -points_ / 2 ? m[ua] : -m[ua];
  }
  return index_of(neg);
}

}  // namespace nsrand
