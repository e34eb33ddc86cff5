#include "nsrand/norms.hpp"

#include <cmath>
#include <limits>

#include "nsrand/error.hpp"
#include "nsrand/operators.hpp"

namespace nsrand {

double l2_norm(const SpectralField& field) {
  double sum = 0.0;
  for (const auto& v : field.values()) sum += std::norm(v);
  if (field.space() == Space::physical) sum *= field.grid().cell_volume();
  return std::sqrt(sum);
}

double lp_norm(const SpectralField& physical, double p) {
  require_space(physical, Space::physical, "lp_norm");
  if (!(p >= 1.0)) throw InvalidArgument("lp_norm: p must be >= 1");
  const Grid& grid = physical.grid();
  const std::size_t size = grid.size();
  const bool inf = std::isinf(p);
  double acc = 0.0;
  for (std::size_t idx = 0; idx < size; ++idx) {
    double m2 = 0.0;
    for (std::size_t c = 0; c < physical.components(); ++c) m2 += std::norm(physical(c, idx));
    if (inf) {
      acc = std::max(acc, m2);
    } else if (p == 2.0) {
      acc += m2;
    } else {
      acc += std::pow(m2, 0.5 * p);
    }
  }
  if (inf) return std::sqrt(acc);
  return std::pow(grid.cell_volume() * acc, 1.0 / p);
}

double linf_norm(const SpectralField& physical) {
  return lp_norm(physical, std::numeric_limits<double>::infinity());
}

Complex inner_product(const SpectralField& a, const SpectralField& b) {
  require_space(a, Space::fourier, "inner_product");
  if (!a.same_layout(b)) throw InvalidArgument("inner_product: field layouts differ");
  Complex acc{};
  auto va = a.values();
  auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) acc += std::conj(va[i]) * vb[i];
  return acc;
}

double sobolev_norm(const SpectralField& field, double s) {
  require_space(field, Space::fourier, "sobolev_norm");
  const Grid& grid = field.grid();
  double sum = 0.0;
  for (std::size_t c = 0; c < field.components(); ++c) {
    auto v = field.component(c);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      const double a2 = std::norm(v[idx]);
      if (a2 == 0.0) continue;
      sum += (s == 0.0 ? 1.0 : std::pow(1.0 + grid.xi_squared(idx), s)) * a2;
    }
  }
  return std::sqrt(sum);
}

double gradient_power_norm(const SpectralField& field, int k) {
  require_space(field, Space::fourier, "gradient_power_norm");
  if (k < 0) throw InvalidArgument("gradient_power_norm: k must be >= 0");
  const Grid& grid = field.grid();
  double sum = 0.0;
  for (std::size_t c = 0; c < field.components(); ++c) {
    auto v = field.component(c);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      if (k > 0 && grid.is_nyquist(idx)) continue;
      double w = 1.0;
      for (int i = 0; i < k; ++i) w *= grid.xi_squared(idx);
      sum += w * std::norm(v[idx]);
    }
  }
  return std::sqrt(sum);
}

double relative_divergence(const SpectralField& field) {
  const double grad = gradient_power_norm(field, 1);
  if (grad == 0.0) return 0.0;
  return l2_norm(divergence(field)) / grad;
}

double max_outside_ball(const SpectralField& field, double radius) {
  require_space(field, Space::fourier, "max_outside_ball");
  const Grid& grid = field.grid();
  const double r2 = radius * radius;
  double worst = 0.0;
  for (std::size_t c = 0; c < field.components(); ++c) {
    auto v = field.component(c);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
      if (grid.xi_squared(idx) >= r2) worst = std::max(worst, std::abs(v[idx]));
    }
  }
  return worst;
}

}  // namespace nsrand
