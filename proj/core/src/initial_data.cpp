#include "nsrand/initial_data.hpp"

#include <cmath>
#include <numbers>

#include "nsrand/error.hpp"
#include "nsrand/random.hpp"

namespace nsrand {
namespace {

// Canonical half of the lattice: first nonzero coordinate positive.
bool is_canonical(const Mode& m, int dim) {
  for (int a = 0; a < dim; ++a) {
    const int v = m[static_cast<std::size_t>(a)];
    if (v != 0) return v > 0;
  }
  return false;
}

constexpr std::uint32_t kPhaseStream = 0x9A7A5EEDu;

}  // namespace

double default_tilt(int dim) { return 0.5 * dim + 0.05; }

SpectralField rough_data(const Grid& grid, double s, double tilt, double amplitude, std::uint64_t seed) {
  const int d = grid.dim();
  SpectralField f = SpectralField::vector(grid);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const Mode& m = grid.mode(idx);
    if (grid.is_nyquist(idx) || !is_canonical(m, d)) continue;

    const StreamAddress at{seed,
                           {static_cast<std::uint32_t>(m[0]), static_cast<std::uint32_t>(m[1]),
                            static_cast<std::uint32_t>(m[2]), kPhaseStream}};
    const auto words = Philox4x32::generate(at.counter, Philox4x32::key_from_seed(at.seed));

    double xi[3] = {0.0, 0.0, 0.0};
    Complex e[3];
    Complex dot{};
    for (int a = 0; a < d; ++a) {
      xi[a] = grid.wavenumber(idx, a);
      const double theta = 2.0 * std::numbers::pi * (static_cast<double>(words[static_cast<std::size_t>(a)]) * 0x1.0p-32);
      e[a] = std::polar(1.0, theta);
      dot += xi[a] * e[a];
    }
    const double k2 = grid.xi_squared(idx);
    double norm2 = 0.0;
    for (int a = 0; a < d; ++a) {
      e[a] -= xi[a] * dot / k2;
      norm2 += std::norm(e[a]);
    }
    if (norm2 < 1e-16) {
      // Degenerate phases; fall back to a real direction orthogonal to xi.
      const double k = std::sqrt(k2);
      e[0] = -xi[1] / k;
      e[1] = xi[0] / k;
      if (d == 3) e[2] = 0.0;
      norm2 = 1.0;
    }
    const double profile = amplitude * std::pow(1.0 + k2, 0.5 * (s - tilt)) / std::sqrt(norm2);
    const std::size_t neg = grid.negated(idx);
    for (int a = 0; a < d; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      f(ua, idx) = profile * e[a];
      f(ua, neg) = std::conj(f(ua, idx));
    }
  }
  return f;
}

SpectralField taylor_green(const Grid& grid) {
  if (grid.dim() != 2) throw InvalidArgument("taylor_green: defined for d = 2");
  SpectralField f = SpectralField::vector(grid);
  const double scale = grid.length() / 4.0;  // L^{d/2} / 4
  const Complex over_i(0.0, -1.0);
  for (int m0 : {-1, 1}) {
    for (int m1 : {-1, 1}) {
      const std::size_t idx = grid.index_of({m0, m1, 0});
      f(0, idx) = scale * over_i * static_cast<double>(m0);
      f(1, idx) = -scale * over_i * static_cast<double>(m1);
    }
  }
  return f;
}

SpectralField single_mode(const Grid& grid, const Mode& mode, const std::array<double, 3>& direction,
                          double amplitude) {
  SpectralField f = SpectralField::vector(grid);
  const std::size_t idx = grid.index_of(mode);
  const std::size_t neg = grid.negated(idx);
  const double coefficient = 0.5 * amplitude * std::sqrt(grid.volume());
  for (int a = 0; a < grid.dim(); ++a) {
    const auto ua = static_cast<std::size_t>(a);
    f(ua, idx) += coefficient * direction[ua];
    f(ua, neg) += coefficient * direction[ua];
  }
  return f;
}

}  // namespace nsrand
