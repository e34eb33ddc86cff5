#include "nsrand/stochastic_estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nsrand/error.hpp"
#include "nsrand/fft.hpp"
#include "nsrand/norms.hpp"
#include "nsrand/operators.hpp"
#include "nsrand/parallel.hpp"
#include "nsrand/time_quadrature.hpp"

namespace nsrand {

bool check_admissible(const NormSpec& spec) {
  const bool ordered = spec.r >= spec.p && spec.p >= spec.q && spec.q >= 2.0;
  return ordered && (spec.sigma + spec.s - 2.0 * spec.gamma) * spec.q < 2.0 && spec.sigma >= 0.0 &&
         spec.s >= 0.0;
}

double weighted_space_time_norm(const SpectralField& f, const std::function<double(double)>& symbol,
                                double gamma, double p, double q, std::span<const double> time_grid) {
  require_space(f, Space::fourier, "space_time_norm");
  if (time_grid.empty()) throw InvalidArgument("space_time_norm: empty time grid");
  if (!(q * gamma > -1.0)) {
    throw InvalidArgument("space_time_norm: q gamma <= -1 makes the time integral diverge");
  }
  const Grid& grid = f.grid();
  std::vector<double> static_symbol(grid.size());
  for (std::size_t idx = 0; idx < grid.size(); ++idx) static_symbol[idx] = symbol(grid.xi_squared(idx));

  std::vector<double> integrand(time_grid.size());
  SpectralField work = f;
  for (std::size_t i = 0; i < time_grid.size(); ++i) {
    const double t = time_grid[i];
    if (!(t > 0.0) || (i > 0 && !(t > time_grid[i - 1]))) {
      throw InvalidArgument("space_time_norm: times must be positive and increasing");
    }
    for (std::size_t c = 0; c < f.components(); ++c) {
      auto src = f.component(c);
      auto dst = work.component(c);
      for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        dst[idx] = src[idx] * (static_symbol[idx] * std::exp(-t * grid.xi_squared(idx)));
      }
    }
    work.set_space(Space::fourier);
    transform_in_place(work, Direction::inverse);
    const double norm = lp_norm(work, p);
    integrand[i] = std::pow(t, q * gamma) * std::pow(norm, q);
  }
  return std::pow(power_law_integral(time_grid, integrand, q * gamma), 1.0 / q);
}

double space_time_norm(const SpectralField& f_omega, const NormSpec& spec, std::span<const double> time_grid) {
  if (!check_admissible(spec)) {
    throw InvalidArgument("space_time_norm: exponents violate (sigma + s - 2 gamma) q < 2 or r >= p >= q >= 2");
  }
  const double sigma = spec.sigma;
  auto symbol = [sigma](double k2) {
    if (sigma == 0.0) return 1.0;
    return k2 == 0.0 ? 0.0 : std::pow(k2, 0.5 * sigma);
  };
  return weighted_space_time_norm(f_omega, symbol, spec.gamma, spec.p, spec.q, time_grid);
}

std::vector<double> sample_space_time_norms(const SpectralField& f, const RandomModel& model,
                                            const NormSpec& spec, std::size_t M,
                                            const MonteCarloOptions& options) {
  const RingPartition partition(f.grid());
  const auto times = default_time_grid(spec.horizon, options.per_decade);
  std::vector<double> samples(M, 0.0);
  parallel_for(M, resolve_workers(options.workers), [&](std::size_t i) {
    const auto draw = sample_coefficients(model, partition.max_ring(), options.first_sample + i);
    samples[i] = space_time_norm(randomize(f, draw, partition), spec, times);
  });
  return samples;
}

namespace {

double quantile(std::vector<double> sorted, double level) {
  // Linear interpolation between order statistics.
  const double pos = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

TailFitResult fit_tails(std::vector<double> samples, double data_norm, std::span<const double> lambda_grid,
                        std::size_t lambda_points) {
  TailFitResult result;
  result.M = samples.size();
  result.data_norm = data_norm;
  result.samples = samples;
  if (samples.empty()) throw InvalidArgument("monte_carlo_tails: no samples");

  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const bool identical = sorted.front() == sorted.back();

  if (lambda_grid.empty()) {
    if (identical) {
      result.lambda_grid = {sorted.front()};
    } else {
      result.lambda_grid = linspace(quantile(sorted, 0.5), quantile(sorted, 0.995), lambda_points);
    }
  } else {
    result.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
    if (!std::is_sorted(result.lambda_grid.begin(), result.lambda_grid.end())) {
      throw InvalidArgument("monte_carlo_tails: lambda grid must be increasing");
    }
  }

  const auto M = static_cast<double>(samples.size());
  for (double lambda : result.lambda_grid) {
    const auto above = sorted.end() - std::lower_bound(sorted.begin(), sorted.end(), lambda);
    result.empirical_prob.push_back(static_cast<double>(above) / M);
  }

  if (identical) {
    if (sorted.front() == 0.0) {
      // The zero field: P(norm >= lambda) = 0 for every lambda > 0; nothing to fit.
      for (std::size_t i = 0; i < result.lambda_grid.size(); ++i) {
        if (result.lambda_grid[i] > 0.0) result.empirical_prob[i] = 0.0;
      }
      return result;
    }
    throw InvalidArgument("monte_carlo_tails: all samples are identical");
  }

  std::vector<double> x, y;
  const double norm2 = data_norm * data_norm;
  for (std::size_t i = 0; i < result.lambda_grid.size(); ++i) {
    const double prob = result.empirical_prob[i];
    if (prob >= 5.0 / M && prob <= 0.5) {
      x.push_back(result.lambda_grid[i] * result.lambda_grid[i] / norm2);
      y.push_back(std::log(prob));
    }
  }
  std::vector<double> distinct = x;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 3) throw Error("monte_carlo_tails: degenerate lambda grid (fewer than 3 tail points)");

  const LinearFit fit = least_squares(x, y);
  result.C2 = -fit.slope;
  result.C1 = std::exp(fit.intercept);
  result.r_squared = fit.r_squared;
  result.fit_points = fit.points;
  result.fit_valid = true;
  return result;
}

TailFitResult monte_carlo_tails(const SpectralField& f, const RandomModel& model, const NormSpec& spec,
                                std::size_t M, std::span<const double> lambda_grid,
                                const MonteCarloOptions& options) {
  if (M < 1) throw InvalidArgument("monte_carlo_tails: M must be positive");
  auto samples = sample_space_time_norms(f, model, spec, M, options);
  return fit_tails(std::move(samples), hminus_s_norm(f, spec.s), lambda_grid, options.lambda_points);
}

MomentReport moment_bound_check(const SpectralField& f, const RandomModel& model, const NormSpec& spec,
                                double r, std::size_t M, const MonteCarloOptions& options) {
  if (!(r >= 1.0)) throw InvalidArgument("moment_bound_check: r must be >= 1");
  NormSpec moment_spec = spec;
  moment_spec.r = r;
  const auto samples = sample_space_time_norms(f, model, moment_spec, M, options);
  const double scale = *std::max_element(samples.begin(), samples.end());
  MomentReport report;
  if (scale == 0.0) return report;
  double acc = 0.0;
  for (double v : samples) acc += std::pow(v / scale, r);
  report.moment = scale * std::pow(acc / static_cast<double>(samples.size()), 1.0 / r);
  const double norm = hminus_s_norm(f, spec.s);
  report.ratio = norm > 0.0 ? report.moment / norm : 0.0;
  return report;
}

}  // namespace nsrand
