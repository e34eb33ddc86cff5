#include "nsrand/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "nsrand/error.hpp"
#include "nsrand/norms.hpp"
#include "nsrand/operators.hpp"
#include "nsrand/parallel.hpp"
#include "nsrand/stochastic_estimates.hpp"
#include "nsrand/time_quadrature.hpp"

namespace nsrand {

EnergySeries energy(const Trajectory& trajectory) {
  EnergySeries out;
  const std::size_t count = trajectory.times.size();
  out.times = trajectory.times;
  out.kinetic.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.kinetic[i] = std::pow(l2_norm(trajectory.w_states[i]), 2);
  }
  // The solver's stage-weighted accumulator is far more accurate than a trapezoid
  // over snapshots; fall back to the latter for hand-built trajectories.
  if (trajectory.dissipation.size() == count) {
    out.dissipation_cum.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      out.dissipation_cum[i] = 0.5 * (trajectory.dissipation[i] - trajectory.dissipation.front());
    }
  } else {
    std::vector<double> grad2(count);
    for (std::size_t i = 0; i < count; ++i) {
      grad2[i] = std::pow(gradient_power_norm(trajectory.w_states[i], 1), 2);
    }
    out.dissipation_cum = count > 0 ? cumulative_trapezoid(out.times, grad2) : std::vector<double>{};
  }
  out.total.resize(count);
  out.balance.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.total[i] = out.kinetic[i] + out.dissipation_cum[i];
    out.balance[i] = out.kinetic[i] + 2.0 * out.dissipation_cum[i];
    out.sup_total = std::max(out.sup_total, out.total[i]);
  }
  return out;
}

DwdtSeries dwdt_norm(const Trajectory& trajectory, const SolverConfig& config) {
  DwdtSeries out;
  const std::size_t count = trajectory.times.size();
  out.times = trajectory.times;
  out.hminus1.assign(count, 0.0);
  out.time_exponent = 4.0 / config.dim;
  parallel_for(count, resolve_workers(0), [&](std::size_t i) {
    SpectralField rate = laplacian(trajectory.w_states[i]);
    if (config.nonlinear) rate += nonlinear_rhs(trajectory.w_states[i], trajectory.g_states[i], config.cutoff);
    out.hminus1[i] = sobolev_norm(rate, -1.0);
  });
  if (count >= 2) {
    std::vector<double> powered(count);
    for (std::size_t i = 0; i < count; ++i) powered[i] = std::pow(out.hminus1[i], out.time_exponent);
    out.time_norm = std::pow(trapezoid(out.times, powered), 1.0 / out.time_exponent);
  }
  return out;
}

CondtgReport condtg_check(const SpectralField& f_omega, double gamma, double horizon, double s, int per_decade) {
  require_space(f_omega, Space::fourier, "condtg_check");
  if (!(gamma < 0.0)) throw InvalidArgument("condtg_check: gamma must be negative");
  const int d = f_omega.grid().dim();

  struct Term {
    const char* name;
    double sigma;
    double p;
    double q;
  };
  std::vector<Term> terms;
  if (d == 2) {
    terms = {{"L4L4", 0.0, 4.0, 4.0}};
  } else {
    terms = {{"L2L6_bracket", 0.5, 6.0, 2.0}, {"L83L83_bracket", 0.5, 8.0 / 3.0, 8.0 / 3.0}, {"L8L8", 0.0, 8.0, 8.0}};
  }

  const auto times = default_time_grid(horizon, per_decade);
  CondtgReport report;
  for (const Term& term : terms) {
    NormSpec spec;
    spec.gamma = gamma;
    spec.sigma = term.sigma;
    spec.p = term.p;
    spec.q = term.q;
    spec.r = term.p;
    spec.s = s;
    spec.horizon = horizon;
    if (!check_admissible(spec)) {
      throw InvalidArgument(std::string("condtg_check: inadmissible exponents for ") + term.name +
                            " (need (sigma + s - 2 gamma) q < 2)");
    }
    std::function<double(double)> symbol = [](double) { return 1.0; };
    if (term.sigma > 0.0) symbol = [](double xi2) { return 1.0 + std::pow(xi2, 0.25); };
    const double value = weighted_space_time_norm(f_omega, symbol, gamma, term.p, term.q, times);
    report.terms.push_back({term.name, value});
    report.lambda += value;
  }
  return report;
}

SpectralField nse_operator(const SpectralField& u, const ResidualOptions& options) {
  SpectralField out = laplacian(u);
  if (!options.nonlinear) return out;
  if (options.cutoff) {
    out += nonlinear_rhs(SpectralField::vector(u.grid()), u, *options.cutoff);
  } else {
    out += bilinear_term(u, u, std::numeric_limits<double>::infinity());
  }
  return out;
}

ResidualSeries nse_residual(std::span<const SpectralField> u, std::span<const double> times,
                            const ResidualOptions& options) {
  if (u.size() < 2 || times.size() != u.size()) {
    throw InvalidArgument("nse_residual: need at least two snapshots with matching times");
  }
  std::vector<SpectralField> rhs(u.size(), SpectralField::vector(u[0].grid()));
  parallel_for(u.size(), resolve_workers(0), [&](std::size_t i) { rhs[i] = nse_operator(u[i], options); });

  ResidualSeries out;
  out.times.resize(u.size() - 1);
  out.residual.resize(u.size() - 1);
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double h = times[i + 1] - times[i];
    if (!(h > 0.0)) throw InvalidArgument("nse_residual: times must increase");
    SpectralField r = u[i + 1];
    r -= u[i];
    r *= 1.0 / h;
    SpectralField avg = rhs[i];
    avg += rhs[i + 1];
    avg *= 0.5;
    r -= avg;
    out.times[i] = 0.5 * (times[i] + times[i + 1]);
    out.residual[i] = sobolev_norm(r, -1.0);
  }
  return out;
}

}  // namespace nsrand
