#include "nsrand/heat_flow.hpp"

#include <algorithm>
#include <cmath>

#include "nsrand/error.hpp"
#include "nsrand/fft.hpp"
#include "nsrand/norms.hpp"
#include "nsrand/operators.hpp"
#include "nsrand/randomization.hpp"
#include "nsrand/time_quadrature.hpp"

namespace nsrand {

void heat_semigroup_in_place(SpectralField& field, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("heat_semigroup: time must be >= 0");
  if (t == 0.0) {
    require_space(field, Space::fourier, "heat_semigroup");
    return;
  }
  const Grid& grid = field.grid();
  apply_symbol_in_place(field, [&](std::size_t idx) { return std::exp(-t * grid.xi_squared(idx)); });
}

SpectralField heat_semigroup(const SpectralField& field, double t) {
  SpectralField out = field;
  heat_semigroup_in_place(out, t);
  return out;
}

double small_time_window_start(const Grid& grid) {
  const double kmax = grid.max_wavenumber();
  return 10.0 / (kmax * kmax);
}

double gradient_power_linf(const SpectralField& fourier, int k) {
  require_space(fourier, Space::fourier, "gradient_power_linf");
  if (k < 0 || k > 2) throw InvalidArgument("gradient_power_linf: k must be 0, 1 or 2");
  const Grid& grid = fourier.grid();
  const int d = grid.dim();
  std::vector<double> pointwise(grid.size(), 0.0);

  int combos = 1;
  for (int i = 0; i < k; ++i) combos *= d;
  for (int combo = 0; combo < combos; ++combo) {
    SpectralField derivative = fourier;
    for (int i = 0, rest = combo; i < k; ++i, rest /= d) {
      derivative = partial_derivative(derivative, rest % d);
    }
    transform_in_place(derivative, Direction::inverse);
    for (std::size_t c = 0; c < derivative.components(); ++c) {
      auto v = derivative.component(c);
      for (std::size_t idx = 0; idx < grid.size(); ++idx) pointwise[idx] += std::norm(v[idx]);
    }
  }
  return std::sqrt(*std::max_element(pointwise.begin(), pointwise.end()));
}

DecayReport check_linear_estimates(const SpectralField& f_omega, double s, int k,
                                   std::span<const double> t_grid, NormKind kind) {
  require_space(f_omega, Space::fourier, "check_linear_estimates");
  if (t_grid.empty()) throw InvalidArgument("check_linear_estimates: empty time grid");
  if (k < 0 || k > 2) throw InvalidArgument("check_linear_estimates: k must be 0, 1 or 2");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
      throw InvalidArgument("check_linear_estimates: times must be positive and increasing");
    }
  }

  const Grid& grid = f_omega.grid();
  const double d = grid.dim();
  DecayReport report;
  report.k = k;
  report.kind = kind;
  report.times.assign(t_grid.begin(), t_grid.end());
  report.data_norm = hminus_s_norm(f_omega, s);

  for (double t : t_grid) {
    const SpectralField g = heat_semigroup(f_omega, t);
    double value = 0.0;
    double bound = 0.0;
    double alt_bound = 0.0;
    if (kind == NormKind::l2) {
      value = gradient_power_norm(g, k);
      bound = (1.0 + std::pow(t, -0.5 * (s + k))) * report.data_norm;
      alt_bound = bound;
    } else {
      value = gradient_power_linf(g, k);
      const double bracket = std::max(1.0 / t, std::pow(t, -(k + s + 0.5 * d)));
      bound = std::sqrt(bracket) * report.data_norm;
      alt_bound = bracket * report.data_norm;
    }
    report.values.push_back(value);
    report.ratios.push_back(bound > 0.0 ? value / bound : 0.0);
    report.alt_ratios.push_back(alt_bound > 0.0 ? value / alt_bound : 0.0);
  }
  report.bound_constant = *std::max_element(report.ratios.begin(), report.ratios.end());
  report.alt_bound_constant = *std::max_element(report.alt_ratios.begin(), report.alt_ratios.end());

  report.window_start = std::max(small_time_window_start(grid), t_grid.front());
  report.window_end = 10.0 * report.window_start;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    if (t >= report.window_start * (1.0 - 1e-12) && t <= report.window_end * (1.0 + 1e-12) &&
        report.values[i] > 0.0) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(report.values[i]));
    }
  }
  report.window_points = lx.size();
  report.fitted_slope = lx.size() >= 2 ? least_squares(lx, ly).slope : std::nan("");
  return report;
}

CondgReport condg_check(const SpectralField& f_omega, double s, std::span<const double> t_grid) {
  require_space(f_omega, Space::fourier, "condg_check");
  const double d = f_omega.grid().dim();
  CondgReport report;
  report.times.assign(t_grid.begin(), t_grid.end());
  for (double t : t_grid) {
    if (!(t > 0.0)) throw InvalidArgument("condg_check: times must be positive");
    const SpectralField g = heat_semigroup(f_omega, t);
    report.l2_sup = std::max(report.l2_sup, l2_norm(g) / (1.0 + std::pow(t, -0.5 * s)));
    for (int k = 0; k <= 1; ++k) {
      const double bracket = std::max(1.0 / t, std::pow(t, -(k + s + 0.5 * d)));
      const double value = gradient_power_linf(g, k);
      report.linf_sup[k] = std::max(report.linf_sup[k], value / std::sqrt(bracket));
      report.linf_printed_sup[k] = std::max(report.linf_printed_sup[k], value / bracket);
    }
  }
  return report;
}

}  // namespace nsrand
