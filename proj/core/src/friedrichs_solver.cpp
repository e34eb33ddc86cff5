#include "nsrand/friedrichs_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nsrand/diagnostics.hpp"
#include "nsrand/error.hpp"
#include "nsrand/fft.hpp"
#include "nsrand/heat_flow.hpp"
#include "nsrand/norms.hpp"
#include "nsrand/operators.hpp"

namespace nsrand {

namespace {

constexpr double kFirstSubstep = 1e-3;
constexpr double kSubstepGrowth = 1.2;

// [div T]_i = sum_j i xi_j T_ij for the physical products T_ij = a_i b_j, then
// dealiased, Leray-projected, cut to the ball, negated.
SpectralField divergence_of_products(const SpectralField& a_phys, const SpectralField& b_phys, bool symmetric,
                                     double cutoff) {
  const Grid& grid = a_phys.grid();
  const std::size_t d = static_cast<std::size_t>(grid.dim());
  const std::size_t size = grid.size();
  SpectralField out = SpectralField::vector(grid);
  SpectralField product = SpectralField::scalar(grid, Space::physical);

  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = symmetric ? i : 0; j < d; ++j) {
      product.set_space(Space::physical);
      auto p = product.component(0);
      auto ai = a_phys.component(i);
      auto bj = b_phys.component(j);
      for (std::size_t idx = 0; idx < size; ++idx) p[idx] = ai[idx] * bj[idx];
      transform_in_place(product, Direction::forward);
      auto oi = out.component(i);
      for (std::size_t idx = 0; idx < size; ++idx) {
        oi[idx] += Complex(0.0, grid.wavenumber(idx, static_cast<int>(j))) * p[idx];
      }
      if (symmetric && j != i) {
        auto oj = out.component(j);
        for (std::size_t idx = 0; idx < size; ++idx) {
          oj[idx] += Complex(0.0, grid.wavenumber(idx, static_cast<int>(i))) * p[idx];
        }
      }
    }
  }
  dealias_in_place(out);
  leray_project_in_place(out);
  friedrichs_cutoff_in_place(out, cutoff);
  out *= -1.0;
  return out;
}

void require_vector_fourier(const SpectralField& f, const char* what) {
  require_space(f, Space::fourier, what);
  if (!f.is_vector()) throw InvalidArgument(std::string(what) + ": expected a vector field");
}

bool all_finite(const SpectralField& f) {
  for (const Complex& c : f.values()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

double dissipation_rate(const SpectralField& w) {
  const double grad = gradient_power_norm(w, 1);
  return 2.0 * grad * grad;
}

double forcing_rate(const SpectralField& w, const SpectralField& rhs) {
  return std::abs(2.0 * inner_product(w, rhs).real());
}

}  // namespace

std::string_view to_string(Integrator integrator) {
  return integrator == Integrator::ifrk4 ? "IFRK4" : "IFEuler";
}

Integrator integrator_from_string(std::string_view name) {
  if (name == "IFRK4" || name == "ifrk4") return Integrator::ifrk4;
  if (name == "IFEuler" || name == "ifeuler") return Integrator::ifeuler;
  throw InvalidArgument("unknown integrator '" + std::string(name) + "'");
}

void SolverConfig::validate() const {
  if (dim != 2 && dim != 3) throw ConfigError("d", "must be 2 or 3");
  if (points < 8 || points % 2 != 0) throw ConfigError("N", "must be even and >= 8");
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("L", "must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("T", "must be positive");
  if (!(dt > 0.0) || !(dt <= horizon)) throw ConfigError("dt", "must lie in (0, T]");
  if (!(cutoff > 0.0)) throw ConfigError("n", "cutoff radius must be positive");
  const double band = grid().dealias_radius();
  if (cutoff > band * (1.0 + 1e-12)) {
    throw ConfigError("n", "cutoff radius exceeds the dealiased band N/3 (2pi/L) = " + std::to_string(band));
  }
  if (snapshot_every < 1) throw ConfigError("snapshot_cadence", "must be >= 1");
}

SpectralField bilinear_term(const SpectralField& a, const SpectralField& b, double cutoff) {
  require_vector_fourier(a, "bilinear_term");
  require_vector_fourier(b, "bilinear_term");
  if (!(a.grid() == b.grid())) throw InvalidArgument("bilinear_term: grids differ");
  const SpectralField a_phys = to_physical(dealias(a));
  const SpectralField b_phys = to_physical(dealias(b));
  return divergence_of_products(a_phys, b_phys, false, cutoff);
}

SpectralField nonlinear_rhs(const SpectralField& w, const SpectralField& g, double cutoff) {
  require_vector_fourier(w, "nonlinear_rhs");
  require_vector_fourier(g, "nonlinear_rhs");
  if (!(w.grid() == g.grid())) throw InvalidArgument("nonlinear_rhs: grids differ");
  if (max_outside_ball(w, cutoff) != 0.0) {
    throw InvalidArgument("nonlinear_rhs: w has support outside the cutoff ball");
  }
  SpectralField v = friedrichs_cutoff(g, cutoff);
  v += w;
  dealias_in_place(v);
  transform_in_place(v, Direction::inverse);
  return divergence_of_products(v, v, true, cutoff);
}

FluctuationProblem::FluctuationProblem(SolverConfig config, SpectralField f_omega)
    : config_(config), f_omega_(std::move(f_omega)), cut_data_(f_omega_) {
  config_.validate();
  require_vector_fourier(f_omega_, "solve");
  if (!(f_omega_.grid() == config_.grid())) throw InvalidArgument("solve: data grid does not match config");
  const std::size_t zero = f_omega_.grid().index_of(Mode{0, 0, 0});
  const double scale = std::max(l2_norm(f_omega_), std::numeric_limits<double>::min());
  for (std::size_t c = 0; c < f_omega_.components(); ++c) {
    if (std::abs(f_omega_(c, zero)) > 1e-12 * scale) throw InvalidArgument("solve: data must be mean-zero");
  }
  if (relative_divergence(f_omega_) > 1e-10) throw InvalidArgument("solve: data must be divergence-free");
  friedrichs_cutoff_in_place(cut_data_, config_.cutoff);
}

SpectralField FluctuationProblem::forcing_field(double t) const { return heat_semigroup(cut_data_, t); }

SpectralField FluctuationProblem::product_terms(const SpectralField& w, double t) const {
  if (!config_.nonlinear) return SpectralField::vector(w.grid());
  return nonlinear_rhs(w, forcing_field(t), config_.cutoff);
}

SpectralField FluctuationProblem::time_derivative(const SpectralField& w, double t) const {
  SpectralField out = laplacian(w);
  out += product_terms(w, t);
  return out;
}

FluctuationState FluctuationProblem::step(const FluctuationState& state, double t, double h) const {
  if (!(t >= 0.0)) throw InvalidArgument("step: time must be >= 0");
  if (!(h > 0.0)) throw InvalidArgument("step: step size must be positive");
  const SpectralField& w = state.w;
  FluctuationState next{w, state.dissipation, state.forcing};

  if (config_.integrator == Integrator::ifeuler) {
    const SpectralField k1 = product_terms(w, t);
    next.dissipation += h * dissipation_rate(w);
    next.forcing += h * forcing_rate(w, k1);
    next.w = w;
    next.w += h * k1;
    heat_semigroup_in_place(next.w, h);
  } else {
    const SpectralField k1 = product_terms(w, t);
    const SpectralField w_half = heat_semigroup(w, 0.5 * h);

    SpectralField w2 = w;
    w2 += (0.5 * h) * k1;
    heat_semigroup_in_place(w2, 0.5 * h);
    const SpectralField k2 = product_terms(w2, t + 0.5 * h);

    SpectralField w3 = w_half;
    w3 += (0.5 * h) * k2;
    const SpectralField k3 = product_terms(w3, t + 0.5 * h);

    SpectralField w4 = heat_semigroup(w, h);
    w4 += h * heat_semigroup(k3, 0.5 * h);
    const SpectralField k4 = product_terms(w4, t + h);

    SpectralField mid = k2;
    mid += k3;
    heat_semigroup_in_place(mid, 0.5 * h);
    SpectralField sum = heat_semigroup(k1, h);
    sum += 2.0 * mid;
    sum += k4;
    next.w = heat_semigroup(w, h);
    next.w += (h / 6.0) * sum;

    next.dissipation += (h / 6.0) * (dissipation_rate(w) + 2.0 * dissipation_rate(w2) +
                                     2.0 * dissipation_rate(w3) + dissipation_rate(w4));
    next.forcing += (h / 6.0) * (forcing_rate(w, k1) + 2.0 * forcing_rate(w2, k2) + 2.0 * forcing_rate(w3, k3) +
                                 forcing_rate(w4, k4));
  }

  if (!all_finite(next.w) || !std::isfinite(next.dissipation) || !std::isfinite(next.forcing)) {
    throw StepFailure(t, "step produced non-finite values; reduce dt");
  }
  return next;
}

std::vector<double> FluctuationProblem::time_nodes(double t0) const {
  const double dt = config_.dt;
  const double T = config_.horizon;
  if (!(t0 >= 0.0) || !(t0 < T)) throw InvalidArgument("time_nodes: start must lie in [0, T)");
  std::vector<double> nodes{t0};
  if (t0 == 0.0 && config_.substep_near_zero) {
    for (double t = dt * kFirstSubstep; t < dt * (1.0 - 1e-9); t *= kSubstepGrowth) nodes.push_back(t);
  }
  // Uniform nodes k dt; multiplying rather than accumulating keeps a resumed run on the same grid.
  const double k0 = std::floor(t0 / dt * (1.0 + 1e-12));
  for (double k = k0 + 1.0;; k += 1.0) {
    const double t = k * dt;
    if (t >= T * (1.0 - 1e-12)) break;
    nodes.push_back(t);
  }
  nodes.push_back(T);
  return nodes;
}

double FluctuationProblem::stability_bound() const {
  const double peak = linf_norm(to_physical(forcing_field(config_.dt)));
  if (peak == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::sqrt(2.0) / (peak * config_.cutoff);
}

Trajectory FluctuationProblem::solve() const { return solve_from(SpectralField::vector(f_omega_.grid()), 0.0); }

Trajectory FluctuationProblem::solve_from(const SpectralField& w0, double t0) const {
  require_vector_fourier(w0, "solve_from");
  if (!(w0.grid() == f_omega_.grid())) throw InvalidArgument("solve_from: grid mismatch");
  if (max_outside_ball(w0, config_.cutoff) != 0.0) {
    throw InvalidArgument("solve_from: initial state has support outside the cutoff ball");
  }
  if (config_.nonlinear && config_.dt >= 0.5 * stability_bound()) {
    throw ConfigError("dt", "must be below half the explicit stability bound " +
                                std::to_string(stability_bound()));
  }

  const std::vector<double> nodes = time_nodes(t0);
  Trajectory traj;
  FluctuationState state{w0, 0.0, 0.0};
  const double start_kinetic = std::pow(l2_norm(w0), 2);
  traj.initial_kinetic = start_kinetic;

  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.w_states.push_back(state.w);
    traj.g_states.push_back(forcing_field(t));
    traj.dissipation.push_back(state.dissipation);
    traj.forcing.push_back(state.forcing);
    traj.max_relative_divergence = std::max(traj.max_relative_divergence, relative_divergence(state.w));
  };
  record(t0);

  std::size_t uniform_steps = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double t = nodes[i];
    const double h = nodes[i + 1] - t;
    state = step(state, t, h);
    ++traj.steps;

    const double kinetic = std::pow(l2_norm(state.w), 2);
    traj.max_budget_violation =
        std::max(traj.max_budget_violation, kinetic + state.dissipation - start_kinetic - state.forcing);
    traj.max_support_leak = std::max(traj.max_support_leak, max_outside_ball(state.w, config_.cutoff));

    const bool substep = h < config_.dt * (1.0 - 1e-9) && nodes[i + 1] < config_.dt;
    if (!substep) ++uniform_steps;
    const bool last = i + 2 == nodes.size();
    if (substep || last || uniform_steps % static_cast<std::size_t>(config_.snapshot_every) == 0) {
      record(nodes[i + 1]);
    }
  }
  return traj;
}

FluctuationState step(const FluctuationState& state, double t, double dt, const SolverConfig& config,
                      const SpectralField& f_omega) {
  return FluctuationProblem(config, f_omega).step(state, t, dt);
}

Trajectory solve(const SolverConfig& config, const SpectralField& f_omega) {
  return FluctuationProblem(config, f_omega).solve();
}

Reconstruction reconstruct_u(const Trajectory& trajectory, const SpectralField& f_omega,
                             const SolverConfig& config) {
  require_vector_fourier(f_omega, "reconstruct_u");
  Reconstruction out;
  out.times = trajectory.times;
  out.u.reserve(trajectory.times.size());
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    SpectralField u = heat_semigroup(f_omega, trajectory.times[i]);
    u += trajectory.w_states[i];
    out.u.push_back(std::move(u));
  }
  if (out.u.size() >= 2) {
    ResidualOptions options;
    options.nonlinear = config.nonlinear;
    const ResidualSeries residual = nse_residual(out.u, out.times, options);
    out.residual_times = residual.times;
    out.residual = residual.residual;
  }
  return out;
}

}  // namespace nsrand
