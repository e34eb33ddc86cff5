#include "nsrand/time_quadrature.hpp"

#include <cmath>

#include "nsrand/error.hpp"

namespace nsrand {

std::vector<double> geometric_grid(double start, double end, int per_decade) {
  if (!(start > 0.0) || !(end > start) || per_decade < 1) {
    throw InvalidArgument("geometric_grid: need 0 < start < end and per_decade >= 1");
  }
  const double decades = std::log10(end / start);
  const auto intervals = static_cast<std::size_t>(std::ceil(decades * per_decade - 1e-9));
  std::vector<double> nodes(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    nodes[i] = start * std::pow(end / start, static_cast<double>(i) / static_cast<double>(intervals));
  }
  nodes.back() = end;
  return nodes;
}

std::vector<double> default_time_grid(double horizon, int per_decade) {
  return geometric_grid(horizon * 1e-6, horizon, per_decade);
}

double power_law_integral(std::span<const double> times, std::span<const double> values,
                          double head_exponent) {
  if (times.size() != values.size() || times.empty()) {
    throw InvalidArgument("power_law_integral: need matching, nonempty samples");
  }
  if (!(head_exponent > -1.0)) {
    throw InvalidArgument("power_law_integral: time weight is not integrable at 0");
  }
  double total = values[0] * times[0] / (head_exponent + 1.0);
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double t0 = times[i];
    const double t1 = times[i + 1];
    const double h0 = values[i];
    const double h1 = values[i + 1];
    if (h0 > 0.0 && h1 > 0.0) {
      const double log_ratio = std::log(t1 / t0);
      const double b1 = std::log(h1 / h0) / log_ratio + 1.0;
      if (std::abs(b1 * log_ratio) < 1e-8) {
        total += h0 * t0 * log_ratio;
      } else {
        total += h0 * t0 * std::expm1(b1 * log_ratio) / b1;
      }
    } else {
      total += 0.5 * (h0 + h1) * (t1 - t0);
    }
  }
  return total;
}

double trapezoid(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw InvalidArgument("trapezoid: size mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    total += 0.5 * (values[i] + values[i + 1]) * (times[i + 1] - times[i]);
  }
  return total;
}

std::vector<double> cumulative_trapezoid(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw InvalidArgument("cumulative_trapezoid: size mismatch");
  std::vector<double> out(times.size(), 0.0);
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    out[i + 1] = out[i] + 0.5 * (values[i] + values[i + 1]) * (times[i + 1] - times[i]);
  }
  return out;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("least_squares: need >= 2 points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("least_squares: x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.points = x.size();
  return fit;
}

}  // namespace nsrand
