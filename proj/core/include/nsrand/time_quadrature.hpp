#pragma once

#include <span>
#include <vector>

namespace nsrand {

/// Geometric nodes from start to end (both included), `per_decade` per factor of 10.
std::vector<double> geometric_grid(double start, double end, int per_decade);

/// Default grid for singular time weights: 64 nodes per decade over [T 1e-6, T].
std::vector<double> default_time_grid(double horizon, int per_decade = 64);

/// int_0^{t_last} h(t) dt from samples h_i = h(t_i) on increasing positive nodes.
/// Between nodes h is interpolated as a power law (exact for a t^b integrand),
/// falling back to the trapezoid where a sample is not positive. On [0, t_0] the
/// integrand is taken as h_0 (t / t_0)^head_exponent; head_exponent must exceed -1.
double power_law_integral(std::span<const double> times, std::span<const double> values,
                          double head_exponent);

/// Trapezoid rule on arbitrary increasing nodes.
double trapezoid(std::span<const double> times, std::span<const double> values);

/// Running trapezoid integral, out[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> times, std::span<const double> values);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y = intercept + slope x. Needs two distinct x values.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace nsrand
