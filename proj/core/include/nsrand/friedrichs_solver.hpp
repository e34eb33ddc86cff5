#pragma once

#include <cstddef>
#include <numbers>
#include <string_view>
#include <vector>

#include "nsrand/spectral_field.hpp"

namespace nsrand {

enum class Integrator { ifrk4, ifeuler };

std::string_view to_string(Integrator integrator);
Integrator integrator_from_string(std::string_view name);

struct SolverConfig {
  int dim = 2;
  int points = 64;
  double length = 2.0 * std::numbers::pi;
  double cutoff = 16.0;  ///< Friedrichs radius n, frequency units
  double horizon = 1.0;
  double dt = 1e-3;
  double s = 0.25;
  double gamma = -0.1;
  Integrator integrator = Integrator::ifrk4;
  bool substep_near_zero = true;
  int snapshot_every = 10;  ///< uniform steps between snapshots
  bool nonlinear = true;    ///< false drops every product term (pure heat flow)

  Grid grid() const { return Grid::make(dim, points, length); }
  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
};

/// w_n together with the two running energy integrals
/// dissipation = 2 int ||nabla w||^2 and forcing = int |2 <w, N(w, g)>|.
struct FluctuationState {
  SpectralField w;
  double dissipation = 0.0;
  double forcing = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> w_states;
  std::vector<SpectralField> g_states;  ///< J_n e^{t Delta} f_omega
  std::vector<double> dissipation;      ///< running 2 int ||nabla w||^2 at each snapshot
  std::vector<double> forcing;          ///< running int |2 <w, N>| at each snapshot
  double initial_kinetic = 0.0;
  /// Largest ||w||^2 + dissipation - ||w(t0)||^2 - forcing over all steps.
  double max_budget_violation = 0.0;
  double max_relative_divergence = 0.0;
  double max_support_leak = 0.0;  ///< largest |coefficient| of w outside the cutoff ball
  std::size_t steps = 0;
};

/// -J_n P div(a (x) b), with [div(a (x) b)]_i = d_j (a_i b_j). Factors are
/// dealiased, multiplied in physical space, and differentiated spectrally.
SpectralField bilinear_term(const SpectralField& a, const SpectralField& b, double cutoff);

/// The product part of the truncated fluctuation equation,
///   -J P div(w(x)w) - J P div(w(x)Jg) - J P div(Jg(x)w) - J P div(Jg(x)Jg),
/// evaluated as one product of v = w + J g. Throws InvalidArgument if w has
/// support outside the cutoff ball.
SpectralField nonlinear_rhs(const SpectralField& w, const SpectralField& g, double cutoff);

/// The truncated fluctuation system for one realisation of the data.
class FluctuationProblem {
 public:
  /// Validates the config and checks that f_omega is mean-zero and divergence-free.
  FluctuationProblem(SolverConfig config, SpectralField f_omega);

  const SolverConfig& config() const noexcept { return config_; }
  const SpectralField& data() const noexcept { return f_omega_; }

  /// J_n g(t) = e^{t Delta} J_n f_omega.
  SpectralField forcing_field(double t) const;
  /// Product terms at time t (zero when config.nonlinear is false).
  SpectralField product_terms(const SpectralField& w, double t) const;
  /// Full right-hand side Delta w + product terms.
  SpectralField time_derivative(const SpectralField& w, double t) const;

  /// One integrating-factor step of size dt from time t. Throws StepFailure on
  /// non-finite output.
  FluctuationState step(const FluctuationState& state, double t, double dt) const;

  /// Step nodes from t0 to the horizon: geometric substeps near t = 0 when
  /// enabled, then the uniform grid k dt.
  std::vector<double> time_nodes(double t0) const;

  Trajectory solve() const;
  Trajectory solve_from(const SpectralField& w0, double t0) const;

  /// 2 sqrt(2) / (max |J g(dt)| n): the RK4 imaginary-axis limit for the advective part.
  double stability_bound() const;

 private:
  SolverConfig config_;
  SpectralField f_omega_;
  SpectralField cut_data_;  // J_n f_omega
};

FluctuationState step(const FluctuationState& state, double t, double dt, const SolverConfig& config,
                      const SpectralField& f_omega);
Trajectory solve(const SolverConfig& config, const SpectralField& f_omega);

struct Reconstruction {
  std::vector<double> times;
  std::vector<SpectralField> u;  ///< e^{t Delta} f_omega + w(t)
  std::vector<double> residual_times;
  std::vector<double> residual;  ///< H^{-1} residual of the full equation between snapshots
};

Reconstruction reconstruct_u(const Trajectory& trajectory, const SpectralField& f_omega,
                             const SolverConfig& config);

}  // namespace nsrand
