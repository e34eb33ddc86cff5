#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nsrand/friedrichs_solver.hpp"
#include "nsrand/spectral_field.hpp"

namespace nsrand {

/// E(w)(t) = ||w||^2 + int_0^t ||nabla w||^2 per snapshot, dissipation by trapezoid.
struct EnergySeries {
  std::vector<double> times;
  std::vector<double> kinetic;          ///< ||w||^2
  std::vector<double> dissipation_cum;  ///< int ||nabla w||^2
  std::vector<double> total;            ///< kinetic + dissipation_cum
  std::vector<double> balance;          ///< kinetic + 2 dissipation_cum, conserved by pure heat flow
  double sup_total = 0.0;
};

EnergySeries energy(const Trajectory& trajectory);

struct DwdtSeries {
  std::vector<double> times;
  std::vector<double> hminus1;  ///< ||dw/dt||_{H^{-1}} per snapshot
  double time_exponent = 2.0;   ///< 4/d
  double time_norm = 0.0;       ///< L^{4/d}([t0, T]) norm by trapezoid
};

DwdtSeries dwdt_norm(const Trajectory& trajectory, const SolverConfig& config);

struct CondtgTerm {
  std::string name;
  double value = 0.0;
};

struct CondtgReport {
  std::vector<CondtgTerm> terms;
  double lambda = 0.0;  ///< sum of the terms
};

/// Size of the linear evolution g = e^{t Delta} f_omega in the norms that must stay below lambda:
///   d = 2: ||t^gamma g||_{L^4 L^4};
///   d = 3: ||t^gamma (I + (-Delta)^{1/4}) g||_{L^2 L^6} + ||t^gamma (I + (-Delta)^{1/4}) g||_{L^{8/3} L^{8/3}}
///          + ||t^gamma g||_{L^8 L^8}.
/// Throws InvalidArgument for gamma >= 0 or when (sigma + s - 2 gamma) q < 2 fails for a term.
CondtgReport condtg_check(const SpectralField& f_omega, double gamma, double horizon, double s,
                          int per_decade = 64);

struct ResidualOptions {
  std::optional<double> cutoff;  ///< apply J_n to the product term
  bool nonlinear = true;
};

/// Delta u - [J] P div(u (x) u).
SpectralField nse_operator(const SpectralField& u, const ResidualOptions& options = {});

struct ResidualSeries {
  std::vector<double> times;  ///< midpoints
  std::vector<double> residual;
};

/// || (u(t+h) - u(t))/h - (F(u(t)) + F(u(t+h)))/2 ||_{H^{-1}} for consecutive snapshots,
/// F the operator above; second order in h.
ResidualSeries nse_residual(std::span<const SpectralField> u, std::span<const double> times,
                            const ResidualOptions& options = {});

}  // namespace nsrand
